// Copyright 2026 The bbmc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBMC_BBMC_HPP
#define BBMC_BBMC_HPP

#include "bbmc/check.hpp"
#include "bbmc/component.hpp"
#include "bbmc/ctl_engine.hpp"
#include "bbmc/differential.hpp"
#include "bbmc/dot.hpp"
#include "bbmc/errors.hpp"
#include "bbmc/experiment.hpp"
#include "bbmc/formula.hpp"
#include "bbmc/graph.hpp"
#include "bbmc/host_system.hpp"
#include "bbmc/ids.hpp"
#include "bbmc/liveness.hpp"
#include "bbmc/mealy.hpp"
#include "bbmc/oracle.hpp"
#include "bbmc/parser.hpp"
#include "bbmc/tableau.hpp"
#include "bbmc/test_runner.hpp"
#include "bbmc/witness.hpp"

#endif  // BBMC_BBMC_HPP
