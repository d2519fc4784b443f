#include "gclust/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <sstream>

#include "gclust/error.hpp"

namespace gclust {

std::string canonical_key(const Matrix& m, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidMatrix, "tolerance must be positive");
    std::string key = std::to_string(m.dim());
    for (double x : m.data()) {
        if (!std::isfinite(x)) throw Error(ErrorCode::InvalidMatrix, "non-finite matrix entry");
        const double scaled = std::round(x / tol);
        if (std::abs(scaled) > 9.0e18) throw Error(ErrorCode::InvalidMatrix, "entry too large for the key grid");
        long long q = static_cast<long long>(scaled);
        key += ',';
        key += std::to_string(q);
    }
    return key;
}

Subgroup::Subgroup(std::vector<GroupElement> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Subgroup::contains(GroupElement g) const { return std::binary_search(members_.begin(), members_.end(), g); }

namespace {

void validate_name(const std::string& name) {
    if (name.empty() || name.find('~') != std::string::npos ||
        std::any_of(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c) != 0; })) {
        throw Error(ErrorCode::InvalidSpec, "invalid generator name '" + name + "'");
    }
}

}  // namespace

FiniteGroup FiniteGroup::generate_closure(std::size_t dimension, const std::vector<Matrix>& generators,
                                          std::vector<std::string> generator_names, std::size_t max_order) {
    if (dimension == 0) throw Error(ErrorCode::InvalidSpec, "dimension must be positive");
    if (max_order == 0) throw Error(ErrorCode::InvalidSpec, "max_order must be positive");
    for (const Matrix& g : generators) {
        if (g.dim() != dimension) throw Error(ErrorCode::InvalidMatrix, "generator has wrong dimension");
        canonical_key(g);  // rejects non-finite entries
        if (g.orthogonality_defect() > kDefaultMatrixTol)
            throw Error(ErrorCode::InvalidMatrix, "generator is not orthogonal");
    }
    if (generator_names.empty()) {
        for (std::size_t i = 0; i < generators.size(); ++i) generator_names.push_back("g" + std::to_string(i + 1));
    }
    if (generator_names.size() != generators.size())
        throw Error(ErrorCode::InvalidSpec, "generator names and matrices differ in count");
    for (const auto& name : generator_names) validate_name(name);
    if (std::set<std::string>(generator_names.begin(), generator_names.end()).size() != generator_names.size())
        throw Error(ErrorCode::InvalidSpec, "duplicate generator name");

    FiniteGroup group;
    group.dimension_ = dimension;
    group.generator_names_ = std::move(generator_names);

    auto add = [&](Matrix m, std::string word) -> bool {
        auto key = canonical_key(m);
        if (group.index_by_key_.contains(key)) return false;
        if (group.matrices_.size() >= max_order)
            throw Error(ErrorCode::ClosureBoundExceeded,
                        "generated group has more than " + std::to_string(max_order) + " elements");
        group.index_by_key_.emplace(std::move(key), group.matrices_.size());
        group.matrices_.push_back(std::move(m));
        group.words_.push_back(std::move(word));
        return true;
    };

    add(Matrix::identity(dimension), "");
    // Right-multiplying by generators suffices: inverses are positive powers in a finite group.
    for (std::size_t next = 0; next < group.matrices_.size(); ++next) {
        for (std::size_t s = 0; s < generators.size(); ++s) {
            const std::string& prefix = group.words_[next];
            std::string word = prefix.empty() ? group.generator_names_[s] : prefix + " " + group.generator_names_[s];
            add(group.matrices_[next] * generators[s], std::move(word));
        }
    }

    const std::size_t n = group.matrices_.size();
    group.cayley_.assign(n * n, 0);
    group.inverses_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            auto hit = group.find(group.matrices_[a] * group.matrices_[b]);
            if (!hit) throw Error(ErrorCode::InternalError, "product left the element table");
            group.cayley_[a * n + b] = hit->index;
            if (hit->index == 0) group.inverses_[a] = b;
        }
        if (group.inverses_[a] == n) throw Error(ErrorCode::InternalError, "element without inverse");
    }
    for (const Matrix& g : generators) group.generators_.push_back(*group.find(g));
    return group;
}

std::vector<GroupElement> FiniteGroup::elements() const {
    std::vector<GroupElement> out(order());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = GroupElement{i};
    return out;
}

void FiniteGroup::check(GroupElement g) const {
    if (g.index >= order())
        throw Error(ErrorCode::ForeignElement,
                    "element " + std::to_string(g.index) + " outside group of order " + std::to_string(order()));
}

const Matrix& FiniteGroup::matrix(GroupElement g) const {
    check(g);
    return matrices_[g.index];
}

GroupElement FiniteGroup::multiply(GroupElement g, GroupElement h) const {
    check(g);
    check(h);
    return GroupElement{cayley_[g.index * order() + h.index]};
}

GroupElement FiniteGroup::inverse(GroupElement g) const {
    check(g);
    return GroupElement{inverses_[g.index]};
}

std::optional<GroupElement> FiniteGroup::find(const Matrix& m) const {
    if (m.dim() != dimension_) return std::nullopt;
    auto it = index_by_key_.find(canonical_key(m));
    if (it == index_by_key_.end()) return std::nullopt;
    return GroupElement{it->second};
}

GroupElement FiniteGroup::evaluate_word(const std::string& word) const {
    std::istringstream in(word);
    std::string token;
    GroupElement acc = identity();
    while (in >> token) {
        bool invert = false;
        if (token.size() > 1 && token.back() == '~') {
            invert = true;
            token.pop_back();
        }
        auto it = std::find(generator_names_.begin(), generator_names_.end(), token);
        if (it == generator_names_.end())
            throw Error(ErrorCode::ParseError, "unknown generator '" + token + "' in word '" + word + "'");
        GroupElement letter = generators_[static_cast<std::size_t>(it - generator_names_.begin())];
        acc = multiply(acc, invert ? inverse(letter) : letter);
    }
    return acc;
}

std::string FiniteGroup::word_of(GroupElement g) const {
    check(g);
    return words_[g.index];
}

Subgroup FiniteGroup::subgroup_generated(const std::vector<GroupElement>& gens) const {
    for (GroupElement g : gens) check(g);
    std::vector<char> seen(order(), 0);
    std::vector<GroupElement> members{identity()};
    seen[0] = 1;
    for (std::size_t next = 0; next < members.size(); ++next) {
        for (GroupElement s : gens) {
            GroupElement p = multiply(members[next], s);
            if (!seen[p.index]) {
                seen[p.index] = 1;
                members.push_back(p);
            }
        }
    }
    return Subgroup(std::move(members));
}

std::optional<Subgroup> FiniteGroup::as_subgroup(std::vector<GroupElement> elements) const {
    for (GroupElement g : elements) check(g);
    Subgroup candidate(std::move(elements));
    if (!candidate.contains(identity())) return std::nullopt;
    for (GroupElement a : candidate.members()) {
        if (!candidate.contains(inverse(a))) return std::nullopt;
        for (GroupElement b : candidate.members())
            if (!candidate.contains(multiply(a, b))) return std::nullopt;
    }
    return candidate;
}

std::vector<std::vector<GroupElement>> FiniteGroup::cosets(const Subgroup& h, CosetSide side) const {
    std::vector<char> assigned(order(), 0);
    std::vector<std::vector<GroupElement>> out;
    for (GroupElement g : elements()) {
        if (assigned[g.index]) continue;
        std::vector<GroupElement> coset;
        for (GroupElement m : h.members()) {
            GroupElement p = side == CosetSide::Left ? multiply(g, m) : multiply(m, g);
            assigned[p.index] = 1;
            coset.push_back(p);
        }
        std::sort(coset.begin(), coset.end());
        out.push_back(std::move(coset));
    }
    return out;
}

Subgroup FiniteGroup::conjugate_subgroup(const Subgroup& h, GroupElement g) const {
    const GroupElement g_inv = inverse(g);
    std::vector<GroupElement> out;
    out.reserve(h.order());
    for (GroupElement m : h.members()) out.push_back(multiply(multiply(g_inv, m), g));
    return Subgroup(std::move(out));
}

Matrix rotation_matrix(int n) {
    if (n <= 0) throw Error(ErrorCode::InvalidSpec, "rotation order must be positive");
    const double angle = 2.0 * std::numbers::pi / n;
    return Matrix(2, {std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle)});
}

Matrix reflection_matrix(double vx, double vy) {
    const double norm2 = vx * vx + vy * vy;
    if (!std::isfinite(norm2) || norm2 == 0.0)
        throw Error(ErrorCode::InvalidMatrix, "reflection axis must be a finite nonzero vector");
    return Matrix(2, {2.0 * vx * vx / norm2 - 1.0, 2.0 * vx * vy / norm2, 2.0 * vx * vy / norm2,
                      2.0 * vy * vy / norm2 - 1.0});
}

FiniteGroup standard_point_group(const GroupSpec& spec) {
    struct Visitor {
        FiniteGroup operator()(const SignGroupSpec&) const {
            return FiniteGroup::generate_closure(1, {Matrix(1, {-1.0})}, {"neg"});
        }
        FiniteGroup operator()(const CyclicGroupSpec& s) const {
            if (s.n <= 0) throw Error(ErrorCode::InvalidSpec, "cyclic group needs n >= 1");
            return FiniteGroup::generate_closure(2, {rotation_matrix(s.n)}, {"rot"});
        }
        FiniteGroup operator()(const DihedralGroupSpec& s) const {
            if (s.n <= 0) throw Error(ErrorCode::InvalidSpec, "dihedral group needs n >= 1");
            Matrix ref = reflection_matrix(s.vx, s.vy);
            return FiniteGroup::generate_closure(2, {rotation_matrix(s.n), std::move(ref)}, {"rot", "ref"});
        }
        FiniteGroup operator()(const GeneratorGroupSpec& s) const {
            return FiniteGroup::generate_closure(s.dimension, s.matrices, s.names);
        }
    };
    return std::visit(Visitor{}, spec);
}

}  // namespace gclust
