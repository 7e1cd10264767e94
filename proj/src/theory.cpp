#include "vbc/theory.hpp"

#include <set>

namespace vbc {

std::vector<std::string> defaultCoordinates(int n) {
    switch (n) {
    case 1: return {"t"};
    case 2: return {"x", "y"};
    case 3: return {"x", "y", "z"};
    default: break;
    }
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
    return out;
}

Theory::Theory(int n, std::vector<FieldDecl> fields, std::vector<std::string> coords, int jetCap)
    : n_(n), fields_(std::move(fields)), coords_(std::move(coords)), jetCap_(jetCap) {
    if (n_ < 1 || n_ > kMaxDim) throw std::invalid_argument("base dimension must lie in 1..6");
    if (jetCap_ < 1 || jetCap_ > kMaxOrder) throw std::invalid_argument("jet cap must lie in 1..127");
    if (fields_.empty()) throw std::invalid_argument("a theory needs at least one field");
    if (fields_.size() > 4095) throw std::invalid_argument("too many fields");
    if (coords_.empty()) coords_ = defaultCoordinates(n_);
    if (static_cast<int>(coords_.size()) != n_) throw std::invalid_argument("coordinate count differs from dimension");
    std::set<std::string> seen;
    for (const auto& f : fields_) {
        if (!seen.insert(f.name).second) throw std::invalid_argument("duplicate field name '" + f.name + "'");
    }
    for (const auto& c : coords_) {
        if (!seen.insert(c).second) throw std::invalid_argument("name '" + c + "' used twice");
    }
}

int Theory::fieldIndex(const std::string& name) const {
    for (int a = 0; a < fieldCount(); ++a)
        if (fields_[a].name == name) return a;
    return -1;
}

int Theory::coordIndex(const std::string& name) const {
    for (int i = 0; i < n_; ++i)
        if (coords_[i] == name) return i;
    return -1;
}

std::shared_ptr<Theory> Theory::withJetCap(int cap) const {
    return std::make_shared<Theory>(n_, fields_, coords_, cap);
}

TheoryPtr makeTheory(int n, std::vector<FieldDecl> fields, std::vector<std::string> coords, int jetCap) {
    return std::make_shared<const Theory>(n, std::move(fields), std::move(coords), jetCap);
}

} // namespace vbc
