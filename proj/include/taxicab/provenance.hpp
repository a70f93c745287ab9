#pragma once

namespace taxicab {

/// How strong the justification behind a search bound or verdict is.
/// Certified bounds follow the proven square bound with its hypotheses
/// intact; hypothesis-extended ones apply the same formula at j = 5 or 6
/// where the theorem statement does not literally cover it; empirical
/// results only report what a bounded search saw.
enum class Provenance { Certified, HypothesisExtended, Empirical };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::Certified: return "certified";
        case Provenance::HypothesisExtended: return "hypothesis-extended";
        case Provenance::Empirical: return "empirical";
    }
    return "unknown";
}

inline Provenance weaker(Provenance a, Provenance b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

} // namespace taxicab
