#include "tpo/irreps.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace tpo {

Irreps::Irreps(std::vector<Entry> entries) : entries_(std::move(entries)) {
  for (const Entry& e : entries_) {
    if (e.mul < 1) throw std::invalid_argument("irreps: multiplicity must be >= 1");
    if (e.l < 0) throw std::invalid_argument("irreps: degree must be >= 0");
    dim_ += e.mul * (2 * e.l + 1);
  }
}

Irreps Irreps::single_copies(int L) {
  if (L < 0) throw std::invalid_argument("single_copies: L must be >= 0");
  std::vector<Entry> es;
  es.reserve(L + 1);
  for (int l = 0; l <= L; ++l) es.push_back({1, l});
  return Irreps(std::move(es));
}

Irreps Irreps::parse(std::string_view text) {
  std::vector<Entry> es;
  size_t pos = 0;
  auto read_int = [&](const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + pos)
      throw std::invalid_argument(std::string("irreps: expected ") + what + " in '" +
                                  std::string(text) + "'");
    pos = ptr - text.data();
    return value;
  };
  while (pos < text.size()) {
    int mul = read_int("multiplicity");
    if (pos >= text.size() || text[pos] != 'x')
      throw std::invalid_argument("irreps: expected 'x' in '" + std::string(text) + "'");
    ++pos;
    int l = read_int("degree");
    es.push_back({mul, l});
    if (pos < text.size()) {
      if (text[pos] != '+')
        throw std::invalid_argument("irreps: expected '+' in '" + std::string(text) + "'");
      ++pos;
      if (pos == text.size())
        throw std::invalid_argument("irreps: trailing '+' in '" + std::string(text) + "'");
    }
  }
  return Irreps(std::move(es));
}

std::string Irreps::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << '+';
    os << entries_[i].mul << 'x' << entries_[i].l;
  }
  return os.str();
}

int Irreps::offset(int entry, int copy) const {
  if (entry < 0 || entry >= num_entries())
    throw std::out_of_range("irreps: entry index out of range");
  if (copy < 0 || copy >= entries_[entry].mul)
    throw std::out_of_range("irreps: copy index out of range");
  int off = 0;
  for (int e = 0; e < entry; ++e) off += entries_[e].mul * (2 * entries_[e].l + 1);
  return off + copy * (2 * entries_[entry].l + 1);
}

IrrepVector IrrepVector::zeros(const Irreps& irreps) {
  return {irreps, Eigen::VectorXd::Zero(irreps.dim())};
}

IrrepVector IrrepVector::random(const Irreps& irreps, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  IrrepVector v = zeros(irreps);
  for (int i = 0; i < v.data.size(); ++i) v.data[i] = gauss(rng);
  return v;
}

Eigen::VectorBlock<Eigen::VectorXd> IrrepVector::slice(int entry, int copy) {
  int l = irreps.l_of(entry);
  return data.segment(irreps.offset(entry, copy), 2 * l + 1);
}

Eigen::VectorBlock<const Eigen::VectorXd> IrrepVector::slice(int entry, int copy) const {
  int l = irreps.l_of(entry);
  return data.segment(irreps.offset(entry, copy), 2 * l + 1);
}

LinearLayer::LinearLayer(Irreps in, Irreps out) : in_(std::move(in)), out_(std::move(out)) {
  for (int ei = 0; ei < in_.num_entries(); ++ei)
    for (int ci = 0; ci < in_.entries()[ei].mul; ++ci)
      for (int eo = 0; eo < out_.num_entries(); ++eo) {
        if (out_.l_of(eo) != in_.l_of(ei)) continue;  // Schur: zero between degrees
        for (int co = 0; co < out_.entries()[eo].mul; ++co)
          connections_.push_back({ei, ci, eo, co});
      }
  weights_.assign(connections_.size(), 0.0);
}

void LinearLayer::set_weights(const std::vector<double>& w) {
  if (w.size() != weights_.size())
    throw std::invalid_argument("linear layer: expected " + std::to_string(weights_.size()) +
                                " weights, got " + std::to_string(w.size()));
  weights_ = w;
}

void LinearLayer::randomize(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (double& w : weights_) w = gauss(rng);
}

IrrepVector apply_linear(const LinearLayer& layer, const IrrepVector& x, OpCounter* ops) {
  if (x.irreps != layer.in())
    throw std::invalid_argument("linear layer: input descriptor mismatch");
  IrrepVector out = IrrepVector::zeros(layer.out());
  const auto& conns = layer.connections();
  for (size_t i = 0; i < conns.size(); ++i) {
    const auto& c = conns[i];
    out.slice(c.out_entry, c.out_copy) += layer.weights()[i] * x.slice(c.in_entry, c.in_copy);
    count_muls(ops, 2 * layer.in().l_of(c.in_entry) + 1);
  }
  return out;
}

}  // namespace tpo
