// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_AWCD_HPP_
#define AWCD_AWCD_HPP_

#include "awcd/bench/benchmark.hpp"
#include "awcd/bench/synthetic.hpp"
#include "awcd/cloud/io.hpp"
#include "awcd/cloud/local_stats.hpp"
#include "awcd/denoise/awcd.hpp"
#include "awcd/denoise/ror.hpp"
#include "awcd/denoise/sor.hpp"
#include "awcd/spd/curvature_oracle.hpp"
#include "awcd/spd/geometry.hpp"

#endif // AWCD_AWCD_HPP_
