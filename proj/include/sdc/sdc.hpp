// Copyright 2026 The sdcmem Authors
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

#pragma once

#include "sdc/config.hpp"
#include "sdc/core.hpp"
#include "sdc/environment.hpp"
#include "sdc/fit.hpp"
#include "sdc/protocol.hpp"
#include "sdc/sampling.hpp"
#include "sdc/sweep.hpp"
#include "sdc/tomography.hpp"
