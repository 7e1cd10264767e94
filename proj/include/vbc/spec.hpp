#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "vbc/bv.hpp"

namespace vbc {

// Positioned error from the theory-spec reader; line and column are 1-based.
struct SpecError : std::runtime_error {
    SpecError(int line, int column, const std::string& what);
    int line;
    int column;
};

struct SpecOptions {
    std::optional<int> jetCap;
    std::optional<int> seed;
    std::optional<int> samples;
    std::optional<int> arity;
    bool operator==(const SpecOptions&) const = default;
};

struct SpecDocument {
    TheorySpec spec;
    SpecOptions options;
};

// Sections: name, dimension, coordinates, fields, pairing, omega, Q, L, theta, options.
// A section starts at column 1 with "key:"; indented lines continue it; '#' starts a comment.
// jetCap overrides the document's own jet-cap option.
SpecDocument parseSpec(const std::string& text, std::optional<int> jetCap = {});
SpecDocument loadSpec(const std::string& path, std::optional<int> jetCap = {});

// Reads one expression against an existing theory.
LocalForm parseForm(const TheoryPtr& th, const std::string& text);

// Normal form; parseSpec(printSpec(d)) reproduces d.
std::string printSpec(const SpecDocument& doc);

} // namespace vbc
