// Copyright 2026 The qvote Authors
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

#ifndef QVOTE_QVOTE_HPP
#define QVOTE_QVOTE_HPP

#include "qvote/ballots.hpp"
#include "qvote/density.hpp"
#include "qvote/errors.hpp"
#include "qvote/protocol.hpp"
#include "qvote/qlogic.hpp"
#include "qvote/random.hpp"
#include "qvote/rule.hpp"

#endif  // QVOTE_QVOTE_HPP
