#pragma once

// Umbrella header: quaternion algebra, the expression language, orthogonal
// curvilinear charts, the Moisil-Theodoresco and second-order operators, and
// the verification harness.

#include "mtcurv/chart.hpp"
#include "mtcurv/corpus.hpp"
#include "mtcurv/errors.hpp"
#include "mtcurv/expr.hpp"
#include "mtcurv/fd.hpp"
#include "mtcurv/field.hpp"
#include "mtcurv/golden.hpp"
#include "mtcurv/io.hpp"
#include "mtcurv/operators.hpp"
#include "mtcurv/parse.hpp"
#include "mtcurv/quaternion.hpp"
#include "mtcurv/report.hpp"
#include "mtcurv/suite.hpp"
