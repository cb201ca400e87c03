// Copyright 2026-present the artrec project
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

#include "artrec/corpus.hpp"
#include "artrec/default_pack.hpp"
#include "artrec/error.hpp"
#include "artrec/eval.hpp"
#include "artrec/index.hpp"
#include "artrec/recommend.hpp"
#include "artrec/search.hpp"
#include "artrec/textproc.hpp"
