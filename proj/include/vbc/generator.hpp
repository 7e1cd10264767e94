#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "vbc/theory.hpp"

namespace vbc {

enum class GenKind : std::uint8_t { Jet = 0, Base = 1, Vertical = 2, Horizontal = 3 };

using MultiIndex = std::array<int, Theory::kMaxDim>;

int order(const MultiIndex& I);

// Packed generator. Integer order on the packed value is the canonical
// generator order: kind, field, multi-index (lex), coordinate.
class Gen {
public:
    using Raw = std::uint64_t;

    static Raw jet(const Theory& th, int field, const MultiIndex& I);
    static Raw base(int coord);
    static Raw vertical(const Theory& th, int field, const MultiIndex& I);
    static Raw horizontal(int coord);

    static GenKind kind(Raw g) { return static_cast<GenKind>(g >> 62); }
    static int field(Raw g) { return static_cast<int>((g >> 50) & 0xFFF); }
    static int coord(Raw g) { return static_cast<int>(g & 0x7F); }
    static bool odd(Raw g) { return (g >> 7) & 1u; }
    static MultiIndex index(Raw g);
    static int indexOrder(Raw g);

    // same generator with multi-index I + e_i; throws JetCapExceeded past the cap
    static Raw raise(const Theory& th, Raw g, int i);
    static Raw withIndex(const Theory& th, Raw g, const MultiIndex& I);
    static Raw toVertical(const Theory& th, Raw jetGen);
    static Raw toJet(const Theory& th, Raw verticalGen);

    // total degree (ghd + vfd + hfd) of the generator
    static int degree(const Theory& th, Raw g);
    static int ghost(const Theory& th, Raw g);

    static std::string name(const Theory& th, Raw g);
};

std::string subscript(const Theory& th, const MultiIndex& I);

} // namespace vbc
