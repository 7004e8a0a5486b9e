#pragma once

#include "monores/error.hpp"
#include "monores/scalar.hpp"
#include "monores/exactla.hpp"
#include "monores/monomials.hpp"
#include "monores/graded_complex.hpp"
#include "monores/minsupport.hpp"
#include "monores/posets.hpp"
#include "monores/conic.hpp"
#include "monores/incidence.hpp"
#include "monores/hcw.hpp"
#include "monores/rigidity.hpp"
#include "monores/io.hpp"
