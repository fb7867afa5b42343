// Copyright (c) 2026 The pstab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSTAB_PSTAB_HPP_
#define PSTAB_PSTAB_HPP_

#include "pstab/classifier.hpp"
#include "pstab/error.hpp"
#include "pstab/formats.hpp"
#include "pstab/gate.hpp"
#include "pstab/generator.hpp"
#include "pstab/lexicon.hpp"
#include "pstab/logistic.hpp"
#include "pstab/metrics.hpp"
#include "pstab/normalizers.hpp"
#include "pstab/spoken_numbers.hpp"
#include "pstab/stream.hpp"
#include "pstab/stream_io.hpp"
#include "pstab/unicode.hpp"

namespace pstab {
inline constexpr const char* kVersion = "0.1.0";
}  // namespace pstab

#endif  // PSTAB_PSTAB_HPP_
