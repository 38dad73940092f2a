// Copyright 2026 The dnadapt Authors.
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

#include "dnadapt/mixture.hpp"

#include "dnadapt/error.hpp"

namespace dnadapt {

std::string ViewName(View view) {
  switch (view) {
    case View::kAudio: return "AUDIO";
    case View::kProjNoise: return "PROJ_NOISE";
    case View::kTextNoiseSrc: return "TEXT_NOISE_SRC";
    case View::kTextNoiseTgt: return "TEXT_NOISE_TGT";
  }
  return "AUDIO";
}

View ParseView(const std::string& name) {
  for (View v : kAllViews) {
    if (ViewName(v) == name) return v;
  }
  throw Error(ErrorCode::kMalformedRecord, "unknown view '" + name + "'");
}

}  // namespace dnadapt
