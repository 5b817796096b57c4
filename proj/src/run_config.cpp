#include "bergman/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

void RunConfig::validate_common() const {
  if (!std::isfinite(rho)) throw DomainError("rho must be finite");
  if (!(rel_tol > 0.0) || rel_tol > 1e-4) throw DomainError("rel_tol must lie in (0, 1e-4]");
  if (!(budget_C >= 0.0)) throw DomainError("budget constant must be nonnegative");
}

void RunConfig::validate() const {
  validate_common();
  if (m_list.empty()) throw DomainError("empty sweep");
  for (std::size_t i = 1; i < m_list.size(); ++i)
    if (m_list[i] <= m_list[i - 1]) throw DomainError("m list must be sorted ascending");
}

namespace {

long parse_long(const std::string& text) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + text + "'");
  }
  if (used != text.size()) throw DomainError("not an integer: '" + text + "'");
  return value;
}

} // namespace

std::vector<long> parse_m_range(const std::string& spec, int points) {
  if (spec.empty()) return {};

  std::string lo_text, hi_text;
  if (auto pos = spec.find(".."); pos != std::string::npos) {
    lo_text = spec.substr(0, pos);
    hi_text = spec.substr(pos + 2);
  } else if (auto colon = spec.find(':'); colon != std::string::npos) {
    lo_text = spec.substr(0, colon);
    hi_text = spec.substr(colon + 1);
  }

  if (!lo_text.empty() || !hi_text.empty()) {
    const long lo = parse_long(lo_text), hi = parse_long(hi_text);
    if (lo < 1 || hi < lo) throw DomainError("m range must satisfy 1 <= lo <= hi");
    if (points < 1) throw DomainError("--points must be at least 1");
    std::vector<long> out;
    const double a = std::log(double(lo)), b = std::log(double(hi));
    for (int i = 0; i < points; ++i) {
      const double frac = points == 1 ? 0.0 : double(i) / double(points - 1);
      const long m = std::clamp(std::lround(std::exp(a + frac * (b - a))), lo, hi);
      if (out.empty() || m > out.back()) out.push_back(m);
    }
    return out;
  }

  std::vector<long> out;
  std::stringstream in(spec);
  for (std::string item; std::getline(in, item, ',');) out.push_back(parse_long(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream in(spec);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(static_cast<int>(parse_long(item)));
  return out;
}

} // namespace bergman
