#pragma once

#include "dualres/dual_complex.hpp"

#include <map>
#include <string>
#include <vector>

namespace dualres {

/// An irreducible component of the intersection of the components in
/// `indices`. For |indices| >= 2, `parents[j]` names the unique stratum over
/// indices \ {j} that contains this one; that choice is the attaching map.
struct Stratum {
    std::string id;
    std::vector<std::string> indices;
    std::map<std::string, std::string> parents;

    friend bool operator==(const Stratum&, const Stratum&) = default;
};

/// A simple normal crossing variety reduced to its incidence data.
struct SncVariety {
    std::vector<std::string> components;
    std::vector<Stratum> strata;

    const Stratum* find_stratum(const std::string& id) const;

    friend bool operator==(const SncVariety&, const SncVariety&) = default;
};

/// Incidence violations, each prefixed by the offending stratum id.
std::vector<std::string> incidence_violations(const SncVariety& snc);
void require_valid(const SncVariety& snc);

/// One (|J|-1)-cell per stratum over J. Facet i of a cell is the parent
/// obtained by dropping the i-th smallest component id; the label is J.
DualComplex dual_complex_of(const SncVariety& snc);

/// The germ of (x_1 ... x_n = 0) at the origin: components E1..En and one
/// stratum for every nonempty subset (2^n - 1 strata).
SncVariety coordinate_hyperplanes(int n);

/// Stratum id used by coordinate_hyperplanes for a subset, e.g. "E1*E3".
std::string stratum_name(const std::vector<std::string>& indices);

enum class CenterKind { kStratum, kNonStratum };

/// A blow-up center: either a stratum, or a smooth subvariety sitting inside
/// a host stratum with positive codimension. The combinatorial model cannot
/// test transversality, so the caller asserts snc-compatibility.
struct CenterDescriptor {
    CenterKind kind = CenterKind::kStratum;
    std::string stratum;
    int codim_in_host = 0;
    bool snc_compatible = true;
};

struct CenterCheck {
    bool compatible = false;
    CenterKind kind = CenterKind::kStratum;
    std::vector<std::string> reasons;
    std::vector<std::string> assumptions;
};

CenterCheck check_center(const SncVariety& snc, const CenterDescriptor& center);

struct BlowupResult {
    SncVariety snc;
    DualComplex dual;
};

/// Stratum centers drop the stratum and every stratum whose closure contains
/// it; non-stratum centers leave the incidence data (and so the dual
/// complex) unchanged.
BlowupResult blowup_center(const SncVariety& snc, const CenterDescriptor& center);

} // namespace dualres
