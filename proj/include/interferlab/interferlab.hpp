// Copyright 2026 The InterferLab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INTERFERLAB_INTERFERLAB_HPP
#define INTERFERLAB_INTERFERLAB_HPP

#include "interferlab/classical.hpp"
#include "interferlab/controlled.hpp"
#include "interferlab/core.hpp"
#include "interferlab/distinguish.hpp"
#include "interferlab/error.hpp"
#include "interferlab/interference.hpp"
#include "interferlab/linalg.hpp"
#include "interferlab/oracle.hpp"
#include "interferlab/paths.hpp"
#include "interferlab/quantum.hpp"
#include "interferlab/random.hpp"
#include "interferlab/system.hpp"
#include "interferlab/tolerance.hpp"

#endif  // INTERFERLAB_INTERFERLAB_HPP
