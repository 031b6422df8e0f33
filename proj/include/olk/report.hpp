#ifndef OLK_REPORT_HPP
#define OLK_REPORT_HPP

#include <cstdint>
#include <string>

#include "olk/geometry.hpp"

namespace olk {

/// Human-readable text plus one structured JSON document for a run.
struct Report {
  std::string text;
  std::string json;
};

enum class NormWhich { Luxemburg, Orlicz, Both };

/// 12 significant digits, trailing zeros kept; "inf" for infinities.
std::string format12(double value);

Report report_norm(const SpaceConfig& cfg, const StepFunction& x, NormWhich which);
Report report_rearrange(const StepFunction& x);
Report report_conjugate(const SpaceConfig& cfg);
Report report_classify(const SpaceConfig& cfg);
Report report_predict(const SpaceConfig& cfg);
Report report_witness(const SpaceConfig& cfg);
Report report_probe(const SpaceConfig& cfg, std::uint64_t seed, std::uint64_t samples,
                    unsigned workers);
Report report_luns(const SpaceConfig& cfg, const StepFunction& x, std::uint64_t seed,
                   std::uint64_t samples, unsigned workers);

}  // namespace olk

#endif  // OLK_REPORT_HPP
