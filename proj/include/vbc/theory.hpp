#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace vbc {

struct FieldDecl {
    std::string name;
    int ghost = 0;
};

class Theory {
public:
    static constexpr int kMaxDim = 6;
    static constexpr int kMaxOrder = 127;

    Theory(int n, std::vector<FieldDecl> fields, std::vector<std::string> coords = {}, int jetCap = 8);

    int dim() const { return n_; }
    int jetCap() const { return jetCap_; }
    int fieldCount() const { return static_cast<int>(fields_.size()); }
    const FieldDecl& field(int a) const { return fields_.at(a); }
    const std::vector<FieldDecl>& fields() const { return fields_; }
    const std::string& coord(int i) const { return coords_.at(i); }
    const std::vector<std::string>& coords() const { return coords_; }

    // -1 when absent
    int fieldIndex(const std::string& name) const;
    int coordIndex(const std::string& name) const;

    std::shared_ptr<Theory> withJetCap(int cap) const;

private:
    int n_;
    std::vector<FieldDecl> fields_;
    std::vector<std::string> coords_;
    int jetCap_;
};

using TheoryPtr = std::shared_ptr<const Theory>;

TheoryPtr makeTheory(int n, std::vector<FieldDecl> fields, std::vector<std::string> coords = {}, int jetCap = 8);

std::vector<std::string> defaultCoordinates(int n);

struct JetCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a geometric series failed to terminate within its degree bound
struct NilpotencyExceeded : std::logic_error {
    using std::logic_error::logic_error;
};

struct TheoryMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace vbc
