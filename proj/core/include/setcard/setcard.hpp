// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "setcard/ast.hpp"
#include "setcard/cardgraph.hpp"
#include "setcard/engine.hpp"
#include "setcard/eqengine.hpp"
#include "setcard/frontend.hpp"
#include "setcard/graph.hpp"
#include "setcard/lia.hpp"
#include "setcard/model.hpp"
#include "setcard/normalize.hpp"
#include "setcard/oracle.hpp"
#include "setcard/setrules.hpp"
#include "setcard/state.hpp"
