#include "coversys/space.hpp"

#include <cmath>
#include <sstream>

namespace coversys {

ProductSpace::ProductSpace(std::vector<std::uint32_t> sizes) : sizes_(std::move(sizes)) {
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] < 2) {
      throw std::invalid_argument("coordinate " + std::to_string(i) +
                                  " has fewer than two elements");
    }
    if (sizes_[i] == Hyperplane::kFree) {
      throw std::invalid_argument("coordinate size out of range");
    }
  }
}

std::optional<std::uint64_t> ProductSpace::point_count() const {
  std::uint64_t total = 1;
  for (std::uint32_t s : sizes_) {
    if (total > std::numeric_limits<std::uint64_t>::max() / s) return std::nullopt;
    total *= s;
  }
  return total;
}

std::vector<std::uint64_t> ProductSpace::strides() const {
  std::vector<std::uint64_t> out(sizes_.size());
  std::uint64_t stride = 1;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    out[i] = stride;
    stride *= sizes_[i];
  }
  return out;
}

CoordSet::CoordSet(std::initializer_list<std::size_t> elems) {
  for (std::size_t e : elems) insert(e);
}

CoordSet CoordSet::all(std::size_t k) {
  if (k > kMaxCoords) throw CapacityError("more than 64 coordinates");
  return CoordSet(k == kMaxCoords ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1);
}

void CoordSet::insert(std::size_t i) {
  if (i >= kMaxCoords) throw CapacityError("coordinate index beyond 64");
  bits_ |= std::uint64_t{1} << i;
}

std::vector<std::size_t> CoordSet::elements() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

CoordSet Hyperplane::fixed_set() const {
  CoordSet out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != kFree) out.insert(i);
  }
  return out;
}

std::size_t Hyperplane::fixed_count() const {
  std::size_t n = 0;
  for (std::uint32_t v : c_) n += (v != kFree);
  return n;
}

void validate(const ProductSpace& space, const Hyperplane& h) {
  if (h.dim() != space.dim()) {
    throw std::invalid_argument("hyperplane has " + std::to_string(h.dim()) +
                                " coordinates, space has " + std::to_string(space.dim()));
  }
  for (std::size_t i = 0; i < h.dim(); ++i) {
    if (h.is_fixed(i) && h.value(i) >= space.size(i)) {
      throw std::invalid_argument("fixed value " + std::to_string(h.value(i)) +
                                  " out of range at coordinate " + std::to_string(i));
    }
  }
}

bool contains(const Hyperplane& h, std::span<const std::uint32_t> x) {
  if (x.size() != h.dim()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (h.is_fixed(i) && h.value(i) != x[i]) return false;
  }
  return true;
}

Measure measure(const ProductSpace& space, const Hyperplane& h, CoordSet coords) {
  BigInt denominator = 1;
  double log_value = 0.0;
  for (std::size_t i : (h.fixed_set() & coords).elements()) {
    denominator *= space.size(i);
    log_value -= std::log(static_cast<double>(space.size(i)));
  }
  return Measure{Rational(BigInt(1), denominator), log_value};
}

double log_measure(const ProductSpace& space, const Hyperplane& h, CoordSet coords) {
  double log_value = 0.0;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    if (h.is_fixed(i) && coords.contains(i)) {
      log_value -= std::log(static_cast<double>(space.size(i)));
    }
  }
  return log_value;
}

Hyperplane restrict(const Hyperplane& h, CoordSet coords) {
  if (coords.empty()) throw std::invalid_argument("restriction to an empty coordinate set");
  std::vector<std::uint32_t> c;
  for (std::size_t i : coords.elements()) {
    if (i >= h.dim()) throw std::invalid_argument("coordinate out of range");
    c.push_back(h.value(i));
  }
  return Hyperplane(std::move(c));
}

ProductSpace restrict(const ProductSpace& space, CoordSet coords) {
  std::vector<std::uint32_t> sizes;
  for (std::size_t i : coords.elements()) sizes.push_back(space.size(i));
  return ProductSpace(std::move(sizes));
}

std::uint64_t point_index(const ProductSpace& space, std::span<const std::uint32_t> x) {
  if (x.size() != space.dim()) throw std::invalid_argument("dimension mismatch");
  std::uint64_t index = 0;
  std::uint64_t stride = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= space.size(i)) throw std::invalid_argument("coordinate out of range");
    index += stride * x[i];
    stride *= space.size(i);
  }
  return index;
}

Point point_at(const ProductSpace& space, std::uint64_t index) {
  Point x(space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) {
    x[i] = static_cast<std::uint32_t>(index % space.size(i));
    index /= space.size(i);
  }
  return x;
}

std::string to_string(const Hyperplane& h) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < h.dim(); ++i) {
    if (i) os << ',';
    if (h.is_free(i)) {
      os << '*';
    } else {
      os << h.value(i);
    }
  }
  os << ']';
  return os.str();
}

}  // namespace coversys
