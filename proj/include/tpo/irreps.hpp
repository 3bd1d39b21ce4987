#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tpo/opcount.hpp"

namespace tpo {

// A real irreducible representation of SO(3): degree l, dimension 2l+1.
// Components are always ordered m = -l..+l.
struct Irrep {
  int l = 0;

  int dim() const { return 2 * l + 1; }
  friend bool operator==(const Irrep&, const Irrep&) = default;
};

// An ordered list of irrep copies, e.g. "2x1+1x0" = two l=1 copies followed
// by one l=0 copy.  Order and multiplicities are structural: [(1,1),(1,1)]
// and [(2,1)] describe the same space but are distinct descriptors.
class Irreps {
 public:
  struct Entry {
    int mul = 0;
    int l = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Irreps() = default;
  explicit Irreps(std::vector<Entry> entries);

  // 0 + 1 + ... + L, one copy each.
  static Irreps single_copies(int L);

  // Inverse of str(): accepts "2x1+1x0" and the empty string.
  static Irreps parse(std::string_view text);
  std::string str() const;

  const std::vector<Entry>& entries() const { return entries_; }
  int num_entries() const { return static_cast<int>(entries_.size()); }

  // Total flat dimension, sum of mul*(2l+1).
  int dim() const { return dim_; }

  // Offset of a given copy's first component in the flat layout.
  int offset(int entry, int copy = 0) const;
  int l_of(int entry) const { return entries_[entry].l; }

  friend bool operator==(const Irreps&, const Irreps&) = default;

 private:
  std::vector<Entry> entries_;
  int dim_ = 0;
};

// A flat coefficient vector together with the descriptor giving its layout.
// Copies are stored contiguously in entry order, each copy m = -l..+l.
struct IrrepVector {
  Irreps irreps;
  Eigen::VectorXd data;

  static IrrepVector zeros(const Irreps& irreps);

  // Standard-normal components; deterministic for a given generator state.
  static IrrepVector random(const Irreps& irreps, std::mt19937_64& rng);

  // View of one copy (2l+1 components).  Out-of-range indices throw.
  Eigen::VectorBlock<Eigen::VectorXd> slice(int entry, int copy = 0);
  Eigen::VectorBlock<const Eigen::VectorXd> slice(int entry, int copy = 0) const;
};

// An SO(3)-equivariant linear map.  Schur's lemma pins the shape: the only
// equivariant maps between irreps are zero (different l) or scalar multiples
// of the identity (same l), so the layer holds exactly one weight per
// (input copy, output copy) pair of equal degree.
class LinearLayer {
 public:
  struct Connection {
    int in_entry, in_copy;
    int out_entry, out_copy;
  };

  LinearLayer(Irreps in, Irreps out);

  const Irreps& in() const { return in_; }
  const Irreps& out() const { return out_; }
  const std::vector<Connection>& connections() const { return connections_; }

  int num_weights() const { return static_cast<int>(connections_.size()); }
  void set_weights(const std::vector<double>& w);
  const std::vector<double>& weights() const { return weights_; }
  void randomize(std::mt19937_64& rng);

 private:
  Irreps in_, out_;
  std::vector<Connection> connections_;
  std::vector<double> weights_;
};

// out[c_out] += w * x[c_in] over all connections; 2l+1 multiplies each.
IrrepVector apply_linear(const LinearLayer& layer, const IrrepVector& x,
                         OpCounter* ops = nullptr);

}  // namespace tpo
