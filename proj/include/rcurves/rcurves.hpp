#pragma once

#include "rcurves/boundary_distance.hpp"
#include "rcurves/classifiers.hpp"
#include "rcurves/curves.hpp"
#include "rcurves/dataset.hpp"
#include "rcurves/distributions.hpp"
#include "rcurves/norms.hpp"
#include "rcurves/radius_table.hpp"
#include "rcurves/step_curve.hpp"
#include "rcurves/svg_plot.hpp"
