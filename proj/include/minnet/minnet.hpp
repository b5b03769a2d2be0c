#pragma once

#include "minnet/bvp.hpp"
#include "minnet/curvature.hpp"
#include "minnet/error.hpp"
#include "minnet/export.hpp"
#include "minnet/geometry.hpp"
#include "minnet/holomorphic.hpp"
#include "minnet/integrate.hpp"
#include "minnet/lattice.hpp"
#include "minnet/levenberg_marquardt.hpp"
#include "minnet/minimal.hpp"
#include "minnet/mobius.hpp"
#include "minnet/net_checks.hpp"
#include "minnet/net_io.hpp"
#include "minnet/orbit.hpp"
#include "minnet/parallel.hpp"
#include "minnet/pipeline.hpp"
#include "minnet/quaternion.hpp"
#include "minnet/reflection.hpp"
#include "minnet/report.hpp"
#include "minnet/riemann.hpp"
