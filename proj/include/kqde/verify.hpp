#pragma once
// The verification suite behind `verify-all`: one group of checks per
// acceptance criterion, each reporting a measured defect against its tolerance.

#include <string>
#include <vector>

namespace kq {

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool exact = false;       // exact checks count failures; tolerance is 0
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed() const { return exact ? measured == 0.0 : measured <= tolerance; }
};

struct VerifyOptions {
    int n_max = 5;         // upper bound on the rank used by every criterion
    bool fast = false;     // fewer random bases, sectors and sample points
    unsigned seed = 1;     // random z and random braid words
};

constexpr int kCriteria = 10;

// checks of criterion c (1..kCriteria); throws std::invalid_argument otherwise
std::vector<CheckResult> verify_criterion(int c, const VerifyOptions& opt);
std::vector<CheckResult> verify_all(const VerifyOptions& opt);

}  // namespace kq
