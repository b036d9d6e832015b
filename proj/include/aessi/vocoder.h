// aessi/vocoder.h

// Copyright 2026  AESSI Project Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Speech synthesis from per-frame MGC-LSP parameters.  The parameter vector
// per frame is a log-domain gain followed by M strictly increasing line
// spectral frequencies in (0, pi).  Synthesis converts LSP -> predictor
// coefficients -> warped-domain filter coefficients, pulls out the gain
// factor, and runs impulse/noise excitation through an exact gamma = -1/K
// spectral-approximation cascade over the mel all-pass delay chain
// Phi_m(z) = z^-1 * ((z^-1 - alpha) / (1 - alpha z^-1))^(m-1).

#ifndef AESSI_VOCODER_H_
#define AESSI_VOCODER_H_

#include <cstdint>
#include <string>
#include <vector>

namespace aessi {

struct VocoderConfig {
  double alpha = 0.42;         // frequency-warping parameter, |alpha| < 1
  double gamma = -1.0 / 3.0;   // must equal -1/stage for integer stage >= 1
  int order = 24;              // M, number of line spectral frequencies
  double sample_rate = 22050;  // Hz
  double fps = 82;             // parameter frames per second
};

// Throws std::invalid_argument when a field is out of contract.
void ValidateVocoderConfig(const VocoderConfig& cfg);

// Number of cascade sections: gamma = -1/stage.
int GammaStage(double gamma);

// Gain (log domain) plus M line spectral frequencies, strictly increasing
// in (0, pi).
struct MgcLspVector {
  double gain = 0.0;
  std::vector<double> lsp;

  int Order() const { return static_cast<int>(lsp.size()); }
  void Validate() const;  // throws std::invalid_argument on violation
};

// Per-frame fundamental frequency in Hz; 0 marks an unvoiced frame.
struct F0Track {
  std::vector<double> f0;

  std::size_t NumFrames() const { return f0.size(); }
};

// Warped-domain filter coefficients after gain normalization.  b[0] is zero
// by construction; gain_factor carries (1 + gamma*b(0))^(1/gamma).
struct FilterCoefficients {
  double gain_factor = 1.0;
  std::vector<double> b;
};

// LSP -> predictor coefficients of the reconstructed order-M polynomial,
// expanded from the sum/difference second-order factor products.  Output has
// M+1 entries with the (log) gain copied to position 0.
std::vector<double> LspToCoeff(const MgcLspVector& v);

// Inverse of LspToCoeff: locates the interlaced sum/difference polynomial
// roots on the unit circle by Chebyshev-domain bracketing plus bisection.
// Throws std::runtime_error when the coefficient set is not stable (root
// count or interlacing wrong).
MgcLspVector CoeffToLsp(const std::vector<double>& coeff);

// Mel-cepstral coefficients -> warped filter coefficients:
//   b(M) = c(M),  b(m) = c(m) - alpha * b(m+1).
std::vector<double> Mc2b(const std::vector<double>& c, double alpha);

// Exact inverse of Mc2b.
std::vector<double> B2mc(const std::vector<double>& b, double alpha);

// Gain normalization:  K = (1 + gamma*b(0))^(1/gamma),
//   b'(0) = 0,  b'(m) = b(m) / (1 + gamma*b(0)) for m >= 1.
// Throws std::runtime_error when 1 + gamma*b(0) <= 0 (unstable gain).
FilterCoefficients Gnorm(const std::vector<double>& b, double gamma);

// Exact inverse of Gnorm.
std::vector<double> Ignorm(const FilterCoefficients& fc, double gamma);

// Per-frame sample counts for the fractional frame shift sample_rate/fps,
// accumulated without per-frame rounding drift: the total over any prefix
// deviates from the nominal length by less than one sample.
std::vector<std::int64_t> FrameSampleCounts(std::size_t n_frames,
                                            const VocoderConfig& cfg);

// Impulse-noise excitation.  Voiced frames get unit impulses spaced
// sample_rate/f0 apart with the fractional phase carried across frame
// boundaries; unvoiced frames get zero-mean unit-variance Gaussian noise.
// Throws when any f0 >= sample_rate/2.
std::vector<double> MakeExcitation(const F0Track& f0, const VocoderConfig& cfg,
                                   std::uint64_t noise_seed = 0);

// One cascade of `stage` identical sections, each realizing
// 1 / (1 + sum_m fb[m] * Phi_m(z)) with fb = gamma * b'.  Holds the filter
// memory for one utterance; instances are independent.
class MglsaFilter {
 public:
  MglsaFilter(int order, double alpha, int stages);

  // fb has order+1 entries; fb[0] is ignored.
  double Step(double x, const std::vector<double>& fb);
  void Reset();

  int order() const { return order_; }

 private:
  int order_;
  double alpha_;
  int stages_;
  std::vector<double> prev_;  // per stage: [y(n-1), v_1(n-1), ..., v_M(n-1)]
  std::vector<double> cur_;
};

// Full synthesis: per frame LspToCoeff -> Mc2b -> Gnorm, then the excitation
// scaled by K * exp(gain) is run through the cascade.  Feedback coefficients
// ramp linearly per sample from the current frame's values to the next
// frame's (the last frame holds its values).
std::vector<double> MglsaSynthesize(const std::vector<MgcLspVector>& params,
                                    const F0Track& f0,
                                    const VocoderConfig& cfg,
                                    std::uint64_t noise_seed = 0);

struct WavWriteStats {
  std::size_t total = 0;
  std::size_t clipped = 0;  // samples outside [-1, 1] before quantization
};

// 16-bit PCM mono RIFF at cfg.sample_rate.  When normalize is set, samples
// are scaled so the peak magnitude is 0.99 (silence is left untouched).
WavWriteStats WriteWav(const std::vector<double>& samples,
                       const VocoderConfig& cfg, const std::string& path,
                       bool normalize = false);

struct WavData {
  std::vector<double> samples;
  int sample_rate = 0;
};

WavData ReadWav(const std::string& path);

// Parameter files: headerless little-endian float32, frame-major, order+1
// values per frame (gain first, then the LSPs in radians).
void WriteParamFile(const std::string& path,
                    const std::vector<MgcLspVector>& frames);
std::vector<MgcLspVector> ReadParamFile(const std::string& path, int order);

// F0 files: one float32 per frame, Hz, 0 = unvoiced.
void WriteF0File(const std::string& path, const F0Track& track);
F0Track ReadF0File(const std::string& path);

}  // namespace aessi

#endif  // AESSI_VOCODER_H_
