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

#ifndef DNADAPT_MIXTURE_HPP_
#define DNADAPT_MIXTURE_HPP_

#include <array>
#include <cmath>
#include <string>

namespace dnadapt {

/// The four batch views, in the order used by MixtureWeights::AsArray().
enum class View { kAudio = 0, kProjNoise = 1, kTextNoiseSrc = 2, kTextNoiseTgt = 3 };

inline constexpr std::array<View, 4> kAllViews = {View::kAudio, View::kProjNoise,
                                                  View::kTextNoiseSrc, View::kTextNoiseTgt};

std::string ViewName(View view);
/// Throws Error(kMalformedRecord) on an unknown name.
View ParseView(const std::string& name);

/// Batch shares of the four views. A valid point lies on the simplex.
struct MixtureWeights {
  double sigma_a = 1.0;   // source (audio, t)
  double sigma_ta = 0.0;  // source (projector noise, t)
  double sigma_t = 0.0;   // source (text noise, t)
  double tau = 0.0;       // target (text noise, t)

  std::array<double, 4> AsArray() const { return {sigma_a, sigma_ta, sigma_t, tau}; }
  double Weight(View v) const { return AsArray()[static_cast<int>(v)]; }
  double Sum() const { return sigma_a + sigma_ta + sigma_t + tau; }

  bool IsValid(double tolerance = 1e-12) const {
    for (double w : AsArray()) {
      if (!(w >= 0.0) || !std::isfinite(w)) return false;
    }
    return std::abs(Sum() - 1.0) <= tolerance;
  }

  /// Dropping the audio view is the configuration known to erase the
  /// speech-text alignment.
  bool RisksForgetting() const { return sigma_a == 0.0; }

  bool operator==(const MixtureWeights&) const = default;
};

}  // namespace dnadapt

#endif  // DNADAPT_MIXTURE_HPP_
