// SPDX-License-Identifier: Apache-2.0
//
// dfsim - bearing dispersion simulator for directional sources in multipath channels
// Copyright (C) 2026 dfsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DFSIM_DFSIM_HPP
#define DFSIM_DFSIM_HPP

#include "dfsim/angles.hpp"
#include "dfsim/antenna.hpp"
#include "dfsim/errors.hpp"
#include "dfsim/estimation.hpp"
#include "dfsim/geometry.hpp"
#include "dfsim/io.hpp"
#include "dfsim/montecarlo.hpp"
#include "dfsim/profile.hpp"
#include "dfsim/rng.hpp"
#include "dfsim/simulate.hpp"

#endif  // DFSIM_DFSIM_HPP
