// Copyright 2026 The stmkg Authors.
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

#ifndef STMKG_STMKG_HPP_
#define STMKG_STMKG_HPP_

#include "stmkg/assignment.hpp"
#include "stmkg/baseline.hpp"
#include "stmkg/brat.hpp"
#include "stmkg/coref_columns.hpp"
#include "stmkg/corefdoc.hpp"
#include "stmkg/corpus_io.hpp"
#include "stmkg/goldkg.hpp"
#include "stmkg/jsonl.hpp"
#include "stmkg/kgpop.hpp"
#include "stmkg/metrics.hpp"
#include "stmkg/normalize.hpp"
#include "stmkg/parallel.hpp"
#include "stmkg/synth.hpp"
#include "stmkg/union_find.hpp"
#include "stmkg/utf8.hpp"

#endif  // STMKG_STMKG_HPP_
