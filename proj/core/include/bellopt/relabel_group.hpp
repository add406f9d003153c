#pragma once

// Relabeling group of the (2,2,2) scenario, built as nested wreath products.
//
// Composition follows the tree-map reading: (g * h) applies h first, then g.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "bellopt/tensor_core.hpp"

namespace bellopt {

class Permutation {
 public:
  using Label = int;

  Permutation() = default;
  // image[i] is the image of i; throws if not a bijection of {0..n-1}.
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  int apply(int i) const { return image_[i]; }
  Permutation inverse() const;
  // (g * h)(i) = g(h(i))
  friend Permutation operator*(const Permutation& g, const Permutation& h);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  const std::vector<int>& image() const { return image_; }

 private:
  std::vector<int> image_;
};

// Element of Base wr S_n: a top permutation of the n nodes plus one Base element
// per node. Imprimitive action on (leaf, node) pairs:
//   (i, j) -> (sigma_j(i), rho(j)).
// Primitive action on one leaf per node: new[rho(j)] = sigma_j(old[j]).
template <typename Base>
class WreathElement {
 public:
  using Label = std::pair<typename Base::Label, int>;

  WreathElement() = default;
  WreathElement(Permutation top, std::vector<Base> base) : top_(std::move(top)), base_(std::move(base)) {}

  const Permutation& top() const { return top_; }
  const Base& base(int node) const { return base_[node]; }
  int nodes() const { return top_.size(); }

  Label apply(const Label& leaf) const {
    return {base_[leaf.second].apply(leaf.first), top_.apply(leaf.second)};
  }

  std::vector<typename Base::Label> apply_primitive(const std::vector<typename Base::Label>& leaves) const {
    std::vector<typename Base::Label> out(leaves.size());
    for (int j = 0; j < nodes(); ++j) out[top_.apply(j)] = base_[j].apply(leaves[j]);
    return out;
  }

  WreathElement inverse() const {
    const Permutation top_inv = top_.inverse();
    std::vector<Base> base(base_.size());
    // inverse sends (i', rho(j)) back to (sigma_j^{-1}(i'), j)
    for (int j = 0; j < nodes(); ++j) base[top_.apply(j)] = base_[j].inverse();
    return WreathElement(top_inv, std::move(base));
  }

  friend WreathElement operator*(const WreathElement& g, const WreathElement& h) {
    std::vector<Base> base(h.base_.size());
    for (int j = 0; j < h.nodes(); ++j) base[j] = g.base_[h.top_.apply(j)] * h.base_[j];
    return WreathElement(g.top_ * h.top_, std::move(base));
  }

  friend bool operator==(const WreathElement&, const WreathElement&) = default;

 private:
  Permutation top_;
  std::vector<Base> base_;
};

using LocalRelabeling = WreathElement<Permutation>;    // outcomes wr settings
using PartyRelabeling = WreathElement<LocalRelabeling>;  // (outcomes wr settings) wr parties

// One element of G_222 in structured form.
class Relabeling {
 public:
  Relabeling();  // identity
  // outcome_flip[party][setting]; setting_flip[party]; party index 0 = A.
  Relabeling(bool party_swap, std::array<bool, 2> setting_flip,
             std::array<std::array<bool, 2>, 2> outcome_flip);
  explicit Relabeling(PartyRelabeling element);

  bool party_swap() const;
  bool setting_flip(int party) const;
  bool outcome_flip(int party, int setting) const;
  const PartyRelabeling& element() const { return element_; }

  // Image of label index n under this relabeling.
  int map_index(int n) const { return perm_[n]; }
  const std::array<int, kDim>& index_map() const { return perm_; }
  // P with act(g, v) = P v.
  Mat16 matrix() const;

  Relabeling inverse() const;
  friend Relabeling operator*(const Relabeling& g, const Relabeling& h);
  friend bool operator==(const Relabeling& g, const Relabeling& h) { return g.perm_ == h.perm_; }

  // Compact code in [0,128): bit 0 party swap, bits 1-2 setting flips,
  // bits 3-6 outcome flips (party-major).
  int code() const;
  static Relabeling from_code(int code);

 private:
  PartyRelabeling element_;
  std::array<int, kDim> perm_{};
};

// (v^g)[g(l)] = v[l]
OutcomeVector act(const Relabeling& g, const OutcomeVector& v);

std::vector<Relabeling> enumerate_group();

// Flip every outcome of both parties.
Relabeling global_outcome_flip();

// G-invariant blocks (MARG and SI joined, since party swap mixes A and B).
enum class Block { NO1, NO2, NO3, MARG, CORR, SI };
inline constexpr std::array<Block, 6> kAllBlocks = {Block::NO1, Block::NO2, Block::NO3,
                                                    Block::MARG, Block::CORR, Block::SI};
std::string_view name_of(Block b);
std::vector<Signs> members(Block b);

bool verify_invariance(std::span<const Relabeling> group, std::span<const Signs> basis, double tol = 1e-12);
bool verify_invariance(std::span<const Relabeling> group, Block b, double tol = 1e-12);

// dim {M : M P_g = P_g M for all g}
int commutant_dimension(std::span<const Relabeling> group, double tol = 1e-9);

// (1/|G|) sum_g P_g
Mat16 averaging_projector(std::span<const Relabeling> group);

// Checksum of the Cayley table in the enumeration order (FNV-1a over codes).
std::uint64_t cayley_checksum(std::span<const Relabeling> group);

}  // namespace bellopt
