#include "glqk/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "glqk/errors.hpp"

namespace glqk {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: break;
  }
  throw InvalidArgument(std::string("unknown Pauli letter '") + c + "'");
}

PauliString::PauliString(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].first < 0) throw InvalidArgument("negative site index in Pauli string");
    if (k > 0 && entries_[k].first == entries_[k - 1].first) {
      throw InvalidArgument("site " + std::to_string(entries_[k].first) +
                            " appears twice in a Pauli string");
    }
  }
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  s.reserve(entries_.size());
  for (const auto& [site, _] : entries_) s.push_back(site);
  return s;
}

std::optional<Pauli> PauliString::letter_at(int site) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), site,
                             [](const Entry& e, int s) { return e.first < s; });
  if (it != entries_.end() && it->first == site) return it->second;
  return std::nullopt;
}

void PauliString::check_on(const Lattice& lat) const {
  for (const auto& [site, _] : entries_) {
    if (site >= lat.size()) {
      throw InvalidArgument("Pauli string " + to_string() + " acts outside a lattice of " +
                            std::to_string(lat.size()) + " sites");
    }
  }
}

PauliString PauliString::translated(const Lattice& lat, int axis, int offset) const {
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const auto& [site, p] : entries_) out.emplace_back(lat.shift(site, axis, offset), p);
  return PauliString(std::move(out));
}

std::string PauliString::to_string() const {
  if (entries_.empty()) return "I";
  std::ostringstream os;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k) os << ' ';
    os << to_char(entries_[k].second) << entries_[k].first;
  }
  return os.str();
}

ObservablePolynomial::ObservablePolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.factors.empty()) throw InvalidArgument("polynomial term without factors");
    if (!std::isfinite(t.coefficient)) throw InvalidArgument("non-finite coefficient");
  }
}

int ObservablePolynomial::body() const {
  int m = 0;
  for (const auto& t : terms_)
    for (const auto& f : t.factors) m = std::max(m, f.weight());
  return m;
}

int ObservablePolynomial::degree() const {
  int p = 0;
  for (const auto& t : terms_) p = std::max(p, static_cast<int>(t.factors.size()));
  return p;
}

double ObservablePolynomial::l1_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

double ObservablePolynomial::l2_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coefficient * t.coefficient;
  return std::sqrt(s);
}

void ObservablePolynomial::check_on(const Lattice& lat) const {
  for (const auto& t : terms_)
    for (const auto& f : t.factors) f.check_on(lat);
}

nlohmann::json ObservablePolynomial::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : t.factors) {
      nlohmann::json pairs = nlohmann::json::array();
      for (const auto& [site, p] : f.entries()) {
        pairs.push_back(nlohmann::json::array({site, std::string(1, to_char(p))}));
      }
      factors.push_back(std::move(pairs));
    }
    terms.push_back({{"c", t.coefficient}, {"factors", std::move(factors)}});
  }
  return {{"terms", std::move(terms)}};
}

ObservablePolynomial ObservablePolynomial::from_json(const nlohmann::json& j) {
  try {
    std::vector<Term> terms;
    for (const auto& jt : j.at("terms")) {
      Term t;
      t.coefficient = jt.at("c").get<double>();
      for (const auto& jf : jt.at("factors")) {
        std::vector<PauliString::Entry> entries;
        for (const auto& pair : jf) {
          if (!pair.is_array() || pair.size() != 2) {
            throw InvalidArgument("factor entries must be [site, letter] pairs");
          }
          const auto letter = pair[1].get<std::string>();
          if (letter.size() != 1) throw InvalidArgument("Pauli letter must be one character");
          entries.emplace_back(pair[0].get<int>(), pauli_from_char(letter[0]));
        }
        t.factors.emplace_back(std::move(entries));
      }
      terms.push_back(std::move(t));
    }
    return ObservablePolynomial(std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed polynomial JSON: ") + e.what());
  }
}

ObservablePolynomial ObservablePolynomial::parse(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("polynomial file is not JSON: ") + e.what());
  }
  return from_json(j);
}

std::string ObservablePolynomial::dump() const { return to_json().dump(); }

double evaluate_exact(const ObservablePolynomial& g, const ExpectationOracle& expect) {
  double total = 0.0;
  for (const auto& t : g.terms()) {
    double prod = t.coefficient;
    for (const auto& f : t.factors) prod *= f.is_identity() ? 1.0 : expect(f);
    total += prod;
  }
  return total;
}

ObservablePolynomial target_polynomial(const std::string& id, int n) {
  using E = PauliString::Entry;
  if (id == "g1") {
    return ObservablePolynomial({Term{1.0, {PauliString({E{0, Pauli::X}, E{1, Pauli::Y}})}}});
  }
  if (id == "g2") {
    return ObservablePolynomial({Term{1.0,
                                      {PauliString({E{0, Pauli::X}, E{1, Pauli::X}}),
                                       PauliString({E{0, Pauli::Y}, E{1, Pauli::Y}})}}});
  }
  if (id == "g3") {
    if (n < 2) throw InvalidArgument("g3 needs at least two sites");
    return ObservablePolynomial(
        {Term{1.0, {PauliString({E{0, Pauli::X}, E{n / 2, Pauli::Y}})}}});
  }
  throw InvalidArgument("unknown target polynomial '" + id + "' (expected g1, g2 or g3)");
}

}  // namespace glqk
