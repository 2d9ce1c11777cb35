#ifndef VROPT_VROPT_HPP
#define VROPT_VROPT_HPP

#include "vropt/baselines.hpp"
#include "vropt/dataset.hpp"
#include "vropt/errors.hpp"
#include "vropt/experiment.hpp"
#include "vropt/ini.hpp"
#include "vropt/meta.hpp"
#include "vropt/objective.hpp"
#include "vropt/rng.hpp"
#include "vropt/sarah.hpp"
#include "vropt/step_size.hpp"
#include "vropt/surrogate.hpp"
#include "vropt/svg_plot.hpp"
#include "vropt/trace.hpp"
#include "vropt/trace_io.hpp"
#include "vropt/version.hpp"

#endif
