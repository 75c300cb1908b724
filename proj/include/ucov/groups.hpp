#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ucov/tolerances.hpp"

namespace ucov {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// A finite group given by its multiplication table. Construction verifies
// the table exhaustively: closure, identity, inverses, associativity.
// Instances are capped at 10^4 elements so exhaustive checks stay feasible.
class FiniteGroup {
 public:
  static constexpr int kMaxOrder = 10000;

  FiniteGroup(std::string name, std::vector<std::string> elementNames,
              std::vector<std::vector<int>> table);

  static GroupPtr cyclic(int n);
  static GroupPtr trivial();
  // Subgroup of S_degree generated by the given permutations (one-line form,
  // 0-based). Closure computed by orbit enumeration.
  static GroupPtr fromPermutations(int degree,
                                   const std::vector<std::vector<int>>& generators);
  static GroupPtr directProduct(const GroupPtr& a, const GroupPtr& b);
  static GroupPtr make(std::string name, std::vector<std::string> elementNames,
                       std::vector<std::vector<int>> table);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(table_.size()); }
  int multiply(int a, int b) const { return table_.at(a).at(b); }
  int identity() const { return identity_; }
  int inverse(int a) const { return inverses_.at(a); }
  const std::string& elementName(int a) const { return names_.at(a); }
  bool isAbelian() const;

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
  int identity_ = -1;
};

// A homomorphism between finite groups, stored as the image of every domain
// element. The defining property f(ab) = f(a) f(b) is verified exhaustively
// at construction.
class GroupHom {
 public:
  GroupHom(GroupPtr domain, GroupPtr codomain, std::vector<int> images);

  static GroupHom identity(const GroupPtr& g);

  const GroupPtr& domain() const { return domain_; }
  const GroupPtr& codomain() const { return codomain_; }
  int apply(int a) const { return images_.at(a); }
  const std::vector<int>& images() const { return images_; }

  bool isInjective() const;
  bool isSurjective() const;
  bool isBijective() const { return isInjective() && isSurjective(); }
  std::vector<int> kernel() const;

  GroupHom composeWith(const GroupHom& inner) const;  // this of inner

 private:
  GroupPtr domain_;
  GroupPtr codomain_;
  std::vector<int> images_;
};

// 1 -> K --alpha--> S --beta--> U -> 1 with alpha injective, beta surjective
// and image(alpha) = kernel(beta); all verified exhaustively (NotExact on
// failure).
class ShortExactSequence {
 public:
  ShortExactSequence(GroupHom alpha, GroupHom beta);

  const GroupPtr& k() const { return alpha_.domain(); }
  const GroupPtr& s() const { return alpha_.codomain(); }
  const GroupPtr& u() const { return beta_.codomain(); }
  const GroupHom& alpha() const { return alpha_; }
  const GroupHom& beta() const { return beta_; }

 private:
  GroupHom alpha_;
  GroupHom beta_;
};

// Given a retraction gamma: S -> K with gamma(alpha(k)) = k for all k, the
// sequence forces a direct product: s |-> (gamma(s), beta(s)) is an
// isomorphism S -> K x U, verified exhaustively before returning. Throws
// RetractionInvalid if gamma fails the retraction identity.
GroupHom directProductFromLeftSplit(const ShortExactSequence& ses,
                                    const GroupHom& gamma);

// Exhaustive (backtracking, complete) search for a retraction gamma with
// gamma compose alpha = id_K. nullopt is a proof that none exists.
std::optional<GroupHom> findRetraction(const ShortExactSequence& ses);

}  // namespace ucov
