#include "corrkit/registry.hpp"

#include <charconv>
#include <sstream>

#include "corrkit/monotones.hpp"
#include "corrkit/schmidt.hpp"

namespace corrkit {
namespace {

std::vector<int> parse_sites(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty())
      throw InvalidArgument("bad site list '" + std::string(text) + "'");
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

std::string format_order(double q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace

MonotoneHandle mutual_information_monotone() {
  return {"total_mutual_information", [](const DensityOperator& rho) { return total_mutual_information(rho); },
          {1, 2, 3}, false, false, 0.0};
}

MonotoneHandle formation_monotone(const SiteSet& cut, std::string name) {
  return {std::move(name),
          [cut](const DensityOperator& rho) {
            if (rho.factorization().sites() < 2) throw Unsupported("E_f needs at least two sites");
            return entanglement_of_formation(rho, cut);
          },
          {1, 2, 3}, false, true, 0.0};
}

MonotoneHandle entropy_monotone(double q) {
  if (std::isnan(q) || q < 0.0) throw InvalidArgument("entropy order must be >= 0");
  return {"entropy:q=" + format_order(q),
          [q](const DensityOperator& rho) {
            if (rho.factorization().sites() < 2) throw Unsupported("entropy monotone needs two or more sites");
            const auto psi = as_pure(rho);
            if (!psi) throw Unsupported("entropy monotone is defined on pure states only");
            return entropy_family(schmidt_decompose(*psi, {1}).coefficients, q);
          },
          {1, 3}, false, true, 0.0};
}

MonotoneHandle bell_monotone(const BellFunctional& f, const BellOptions& options) {
  return {"bell:" + f.name(),
          [f, options](const DensityOperator& rho) {
            if (rho.factorization().sites() != 2) throw Unsupported("Bell monotone needs a bipartite state");
            return bell_value(rho, f, options).value;
          },
          {1}, true, false, f.local_bound().value_or(0.0)};
}

MonotoneHandle negated(const MonotoneHandle& h, std::string name) {
  MonotoneHandle out = h;
  out.name = std::move(name);
  out.evaluate = [inner = h.evaluate](const DensityOperator& rho) { return -inner(rho); };
  out.claims.clear();
  out.floor = -h.floor;
  return out;
}

std::vector<MonotoneHandle> monotone_registry() {
  std::vector<MonotoneHandle> out;
  out.push_back(mutual_information_monotone());
  out.push_back(formation_monotone({1}, "entanglement_of_formation"));
  for (double q : {0.0, 0.5, 1.0, 2.0, 64.0}) out.push_back(entropy_monotone(q));
  out.push_back(bell_monotone(BellFunctional::chsh()));
  return out;
}

MonotoneHandle resolve_monotone(std::string_view name) {
  if (name == "I" || name == "total_mutual_information") return mutual_information_monotone();
  if (name == "ef" || name == "entanglement_of_formation")
    return formation_monotone({1}, "entanglement_of_formation");
  if (name == "bell:CHSH") return bell_monotone(BellFunctional::chsh());
  if (name == "neg-I-fixture") return negated(mutual_information_monotone(), "neg-I-fixture");
  if (name.starts_with("pairwise:")) {
    const auto sites = parse_sites(name.substr(9));
    if (sites.size() != 2 || sites[0] == sites[1])
      throw InvalidArgument("pairwise monotone needs two distinct sites");
    const int x = sites[0];
    const int y = sites[1];
    return {std::string(name), [x, y](const DensityOperator& rho) { return pairwise_monotone(rho, x, y); },
            {1, 2, 3}, false, false, 0.0};
  }
  if (name.starts_with("bipartition:")) {
    const auto sites = parse_sites(name.substr(12));
    return formation_monotone(sites, std::string(name));
  }
  if (name.starts_with("entropy:q=")) {
    const std::string_view value = name.substr(10);
    double q = 0.0;
    if (value == "inf") {
      q = INFINITY;
    } else {
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), q);
      if (ec != std::errc() || ptr != value.data() + value.size())
        throw InvalidArgument("bad entropy order in '" + std::string(name) + "'");
    }
    return entropy_monotone(q);
  }
  throw InvalidArgument("unknown monotone '" + std::string(name) + "'");
}

}  // namespace corrkit
