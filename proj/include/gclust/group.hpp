#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gclust/matrix.hpp"

namespace gclust {

/// Index into the element table of a FiniteGroup. Index 0 is the identity.
struct GroupElement {
    std::size_t index = 0;
    auto operator<=>(const GroupElement&) const = default;
};

inline constexpr double kDefaultMatrixTol = 1e-9;
inline constexpr std::size_t kDefaultMaxOrder = 10000;

/// Key identifying a matrix up to rounding onto a grid of spacing `tol`.
std::string canonical_key(const Matrix& m, double tol = kDefaultMatrixTol);

/// Sorted set of element indices of a parent group; always contains the identity.
class Subgroup {
public:
    Subgroup() : members_{GroupElement{0}} {}
    explicit Subgroup(std::vector<GroupElement> members);

    const std::vector<GroupElement>& members() const { return members_; }
    std::size_t order() const { return members_.size(); }
    bool contains(GroupElement g) const;
    bool is_trivial() const { return members_.size() == 1; }

    bool operator==(const Subgroup&) const = default;

private:
    std::vector<GroupElement> members_;
};

enum class CosetSide { Left, Right };

/// A finite group of k x k orthogonal matrices with precomputed Cayley and
/// inverse tables. Immutable after construction.
class FiniteGroup {
public:
    /// Breadth-first product closure of the generators. Element 0 is the
    /// identity; the rest follow in discovery order (generators in input order).
    static FiniteGroup generate_closure(std::size_t dimension, const std::vector<Matrix>& generators,
                                        std::vector<std::string> generator_names = {},
                                        std::size_t max_order = kDefaultMaxOrder);

    std::size_t dimension() const { return dimension_; }
    std::size_t order() const { return matrices_.size(); }
    GroupElement identity() const { return GroupElement{0}; }
    std::vector<GroupElement> elements() const;

    const Matrix& matrix(GroupElement g) const;
    GroupElement multiply(GroupElement g, GroupElement h) const;
    GroupElement inverse(GroupElement g) const;
    std::optional<GroupElement> find(const Matrix& m) const;

    /// Element indices of the generators, parallel to generator_names().
    const std::vector<GroupElement>& generators() const { return generators_; }
    const std::vector<std::string>& generator_names() const { return generator_names_; }

    /// Evaluate a whitespace-separated word over generator names; a trailing
    /// "~" inverts a letter. The empty word is the identity.
    GroupElement evaluate_word(const std::string& word) const;
    /// A shortest word over the generator names (no inverses) spelling g.
    std::string word_of(GroupElement g) const;

    Subgroup subgroup_generated(const std::vector<GroupElement>& generators) const;
    /// Returns the subgroup if `elements` is closed under products and inverses.
    std::optional<Subgroup> as_subgroup(std::vector<GroupElement> elements) const;
    std::vector<std::vector<GroupElement>> cosets(const Subgroup& h, CosetSide side) const;
    /// g^-1 H g
    Subgroup conjugate_subgroup(const Subgroup& h, GroupElement g) const;

private:
    FiniteGroup() = default;
    void check(GroupElement g) const;

    std::size_t dimension_ = 0;
    std::vector<Matrix> matrices_;
    std::vector<std::size_t> cayley_;  // order x order, row-major
    std::vector<std::size_t> inverses_;
    std::unordered_map<std::string, std::size_t> index_by_key_;
    std::vector<GroupElement> generators_;
    std::vector<std::string> generator_names_;
    std::vector<std::string> words_;
};

/// Rotation by 2*pi/n.
Matrix rotation_matrix(int n);
/// Reflection across the line spanned by v: 2 v v^T / |v|^2 - I.
Matrix reflection_matrix(double vx, double vy);

struct SignGroupSpec {};
struct CyclicGroupSpec {
    int n = 1;
};
struct DihedralGroupSpec {
    int n = 1;
    double vx = 1.0;
    double vy = 0.0;
};
struct GeneratorGroupSpec {
    std::size_t dimension = 1;
    std::vector<Matrix> matrices;
    std::vector<std::string> names;
};
using GroupSpec = std::variant<SignGroupSpec, CyclicGroupSpec, DihedralGroupSpec, GeneratorGroupSpec>;

/// Generator names: sign -> "neg"; cyclic -> "rot"; dihedral -> "rot", "ref";
/// explicit generators default to "g1", "g2", ...
FiniteGroup standard_point_group(const GroupSpec& spec);

}  // namespace gclust
