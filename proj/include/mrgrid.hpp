/**************************************************************************
 * mrgrid.hpp
 *
 * Copyright 2026 The mrgrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

// Umbrella header for the library part (everything except the tool layer).

#pragma once

#include "mrgrid/classify.hpp"
#include "mrgrid/codes.hpp"
#include "mrgrid/construct.hpp"
#include "mrgrid/error.hpp"
#include "mrgrid/fmatrix.hpp"
#include "mrgrid/gf.hpp"
#include "mrgrid/kernel.hpp"
#include "mrgrid/mr.hpp"
#include "mrgrid/parallel.hpp"
#include "mrgrid/pattern.hpp"
#include "mrgrid/topology.hpp"
