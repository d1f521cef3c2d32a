#include "torusrf/matgroup.hpp"

#include <functional>
#include <sstream>

namespace torusrf {

ModMat make_mat(const Ring& ring, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return {{ring.from_int(a), ring.from_int(b), ring.from_int(c), ring.from_int(d)}};
}

IntMat make_int_mat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return {{BigInt(a), BigInt(b), BigInt(c), BigInt(d)}};
}

void check_same_ring(const ModMat& x, const ModMat& y) {
  if (!(x.e[0].ring() == y.e[0].ring())) raise(ErrorKind::RingMismatch, "matrices over different rings");
}

const Ring& ring_of(const ModTuple& x) {
  if (x.empty()) raise(ErrorKind::InvalidArgument, "empty tuple has no ring");
  return x.front().e[0].ring();
}

ModMat reduce(const IntMat& m, const Ring& ring) {
  return {{ring.from_int(m.e[0]), ring.from_int(m.e[1]), ring.from_int(m.e[2]), ring.from_int(m.e[3])}};
}

ModTuple reduce(const IntTuple& m, const Ring& ring) {
  ModTuple out;
  out.reserve(m.size());
  for (const auto& x : m) out.push_back(reduce(x, ring));
  return out;
}

ModMat reduce_precision(const ModMat& m, unsigned k_new) {
  return {{reduce_precision(m.e[0], k_new), reduce_precision(m.e[1], k_new),
           reduce_precision(m.e[2], k_new), reduce_precision(m.e[3], k_new)}};
}

ModTuple reduce_precision(const ModTuple& m, unsigned k_new) {
  ModTuple out;
  out.reserve(m.size());
  for (const auto& x : m) out.push_back(reduce_precision(x, k_new));
  return out;
}

IntTuple lift(const ModTuple& m) {
  IntTuple out;
  for (const auto& x : m) {
    if (x.e[0].ring().tau() != 1) raise(ErrorKind::InvalidArgument, "integer lift needs tau = 1");
    out.push_back({{BigInt(x.e[0].coeff(0)), BigInt(x.e[1].coeff(0)), BigInt(x.e[2].coeff(0)),
                    BigInt(x.e[3].coeff(0))}});
  }
  return out;
}

bool nonsingular(const ModTuple& x) {
  for (const auto& m : x) {
    if (!m.det().is_unit()) return false;
  }
  return true;
}

std::vector<RingElem> coordinates(const ModTuple& x) {
  std::vector<RingElem> out;
  out.reserve(4 * x.size());
  for (const auto& m : x) out.insert(out.end(), m.e.begin(), m.e.end());
  return out;
}

ModTuple from_coordinates(std::span<const RingElem> coords) {
  if (coords.size() % 4 != 0) raise(ErrorKind::InvalidArgument, "coordinate count not a multiple of 4");
  ModTuple out;
  for (std::size_t i = 0; i < coords.size(); i += 4) {
    out.push_back({{coords[i], coords[i + 1], coords[i + 2], coords[i + 3]}});
  }
  return out;
}

std::vector<std::uint64_t> encode(const ModTuple& x) {
  std::vector<std::uint64_t> out;
  for (const auto& m : x) {
    for (const auto& v : m.e) {
      for (unsigned i = 0; i < v.ring().tau(); ++i) out.push_back(v.coeff(i));
    }
  }
  return out;
}

FreenessResult freeness_check(std::span<const IntMat> mats, std::size_t max_length) {
  FreenessResult result;
  if (mats.empty()) return result;
  const std::size_t m = mats.size();

  // Letter order for enumeration: x1, x1^-1, x2, x2^-1, ...
  std::vector<Letter> order;
  std::vector<IntMat> value;
  for (std::size_t i = 0; i < m; ++i) {
    const IntMat inv = mats[i].inverse();
    order.push_back(static_cast<Letter>(i + 1));
    value.push_back(mats[i]);
    order.push_back(-static_cast<Letter>(i + 1));
    value.push_back(inv);
  }

  std::vector<Letter> prefix;
  std::function<bool(const IntMat&, std::size_t)> search = [&](const IntMat& acc,
                                                                std::size_t remaining) {
    if (remaining == 0) {
      ++result.words_checked;
      return acc.is_identity();
    }
    for (std::size_t j = 0; j < order.size(); ++j) {
      if (!prefix.empty() && prefix.back() == -order[j]) continue;
      prefix.push_back(order[j]);
      if (search(acc * value[j], remaining - 1)) return true;
      prefix.pop_back();
    }
    return false;
  };

  const IntMat id = IntMat::identity_like(BigInt(0));
  for (std::size_t len = 1; len <= max_length; ++len) {
    prefix.clear();
    if (search(id, len)) {
      result.free = false;
      result.witness = Word(prefix, m);
      return result;
    }
  }
  return result;
}

std::string to_string(const ModMat& m) {
  std::ostringstream os;
  os << "[[" << m.a().to_string() << "," << m.b().to_string() << "],[" << m.c().to_string() << ","
     << m.d().to_string() << "]]";
  return os.str();
}

std::string to_string(const IntMat& m) {
  std::ostringstream os;
  os << "[[" << m.a() << "," << m.b() << "],[" << m.c() << "," << m.d() << "]]";
  return os.str();
}

}  // namespace torusrf
