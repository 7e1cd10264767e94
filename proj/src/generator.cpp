#include "vbc/generator.hpp"

namespace vbc {

namespace {

constexpr int kIndexShift = 8;
constexpr int kFieldShift = 50;
constexpr Gen::Raw kIndexMask = ((Gen::Raw{1} << 42) - 1) << kIndexShift;

int slotShift(int i) { return kIndexShift + 7 * (Theory::kMaxDim - 1 - i); }

Gen::Raw packIndex(const Theory& th, const MultiIndex& I) {
    Gen::Raw r = 0;
    int total = 0;
    for (int i = 0; i < Theory::kMaxDim; ++i) {
        if (I[i] < 0) throw std::invalid_argument("negative multi-index entry");
        if (I[i] > 0 && i >= th.dim()) throw std::invalid_argument("multi-index longer than base dimension");
        total += I[i];
        r |= Gen::Raw(I[i]) << slotShift(i);
    }
    if (total > th.jetCap()) throw JetCapExceeded("jet order " + std::to_string(total) + " exceeds cap " + std::to_string(th.jetCap()));
    return r;
}

Gen::Raw pack(GenKind k, int field, Gen::Raw idx, bool odd, int coord) {
    return (Gen::Raw(k) << 62) | (Gen::Raw(field) << kFieldShift) | idx | (Gen::Raw(odd) << 7) | Gen::Raw(coord);
}

bool oddInt(int v) { return (v % 2 + 2) % 2 == 1; }

} // namespace

int order(const MultiIndex& I) {
    int s = 0;
    for (int v : I) s += v;
    return s;
}

Gen::Raw Gen::jet(const Theory& th, int field, const MultiIndex& I) {
    return pack(GenKind::Jet, field, packIndex(th, I), oddInt(th.field(field).ghost), 0);
}

Gen::Raw Gen::base(int coord) { return pack(GenKind::Base, 0, 0, false, coord); }

Gen::Raw Gen::vertical(const Theory& th, int field, const MultiIndex& I) {
    return pack(GenKind::Vertical, field, packIndex(th, I), oddInt(th.field(field).ghost + 1), 0);
}

Gen::Raw Gen::horizontal(int coord) { return pack(GenKind::Horizontal, 0, 0, true, coord); }

MultiIndex Gen::index(Raw g) {
    MultiIndex I{};
    for (int i = 0; i < Theory::kMaxDim; ++i) I[i] = static_cast<int>((g >> slotShift(i)) & 0x7F);
    return I;
}

int Gen::indexOrder(Raw g) { return order(index(g)); }

Gen::Raw Gen::withIndex(const Theory& th, Raw g, const MultiIndex& I) {
    return (g & ~kIndexMask) | packIndex(th, I);
}

Gen::Raw Gen::raise(const Theory& th, Raw g, int i) {
    MultiIndex I = index(g);
    ++I[i];
    return withIndex(th, g, I);
}

Gen::Raw Gen::toVertical(const Theory& th, Raw g) { return vertical(th, field(g), index(g)); }

Gen::Raw Gen::toJet(const Theory& th, Raw g) { return jet(th, field(g), index(g)); }

int Gen::ghost(const Theory& th, Raw g) {
    switch (kind(g)) {
    case GenKind::Jet:
    case GenKind::Vertical: return th.field(field(g)).ghost;
    default: return 0;
    }
}

int Gen::degree(const Theory& th, Raw g) {
    switch (kind(g)) {
    case GenKind::Jet: return th.field(field(g)).ghost;
    case GenKind::Base: return 0;
    case GenKind::Vertical: return th.field(field(g)).ghost + 1;
    case GenKind::Horizontal: return 1;
    }
    return 0;
}

std::string subscript(const Theory& th, const MultiIndex& I) {
    if (order(I) == 0) return "";
    bool single = true;
    for (const auto& c : th.coords()) single = single && c.size() == 1;
    std::string s = "_{";
    bool first = true;
    for (int i = 0; i < th.dim(); ++i) {
        for (int k = 0; k < I[i]; ++k) {
            if (!single && !first) s += ",";
            s += th.coord(i);
            first = false;
        }
    }
    return s + "}";
}

std::string Gen::name(const Theory& th, Raw g) {
    switch (kind(g)) {
    case GenKind::Jet: return th.field(field(g)).name + subscript(th, index(g));
    case GenKind::Base: return th.coord(coord(g));
    case GenKind::Vertical: return "dV(" + th.field(field(g)).name + subscript(th, index(g)) + ")";
    case GenKind::Horizontal: return "dx(" + th.coord(coord(g)) + ")";
    }
    return "?";
}

} // namespace vbc
