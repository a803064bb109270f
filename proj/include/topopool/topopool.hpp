// Copyright 2026 The topopool Authors.
//
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

#include "topopool/error.hpp"
#include "topopool/features.hpp"
#include "topopool/filtration.hpp"
#include "topopool/graph.hpp"
#include "topopool/landmarks.hpp"
#include "topopool/matrix.hpp"
#include "topopool/model/config.hpp"
#include "topopool/model/model.hpp"
#include "topopool/model/pooling.hpp"
#include "topopool/model/train.hpp"
#include "topopool/nn/adam.hpp"
#include "topopool/nn/checkpoint.hpp"
#include "topopool/nn/layers.hpp"
#include "topopool/nn/ops.hpp"
#include "topopool/nn/tape.hpp"
#include "topopool/persistence.hpp"
#include "topopool/synthetic.hpp"
#include "topopool/tudataset.hpp"
#include "topopool/vietoris_rips.hpp"
#include "topopool/witness.hpp"
