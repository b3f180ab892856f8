// Copyright 2026 The ptagger Authors.
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


// Everything except the networked fetcher (ptagger/wiki_fetch.hpp), which
// needs OpenSSL's SSL library in addition to libcrypto.

#ifndef PTAGGER_PTAGGER_HPP_
#define PTAGGER_PTAGGER_HPP_

#include "ptagger/annotator.hpp"
#include "ptagger/augmenter.hpp"
#include "ptagger/error.hpp"
#include "ptagger/eval.hpp"
#include "ptagger/lexicons.hpp"
#include "ptagger/matcher.hpp"
#include "ptagger/recognizer.hpp"
#include "ptagger/sha256.hpp"
#include "ptagger/similarity.hpp"
#include "ptagger/tag_model.hpp"
#include "ptagger/text_model.hpp"
#include "ptagger/unicode.hpp"
#include "ptagger/wiki_characters.hpp"

#endif  // PTAGGER_PTAGGER_HPP_
