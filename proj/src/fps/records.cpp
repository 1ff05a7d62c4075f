#include "expstar/fps/records.hpp"

#include "expstar/error.hpp"

namespace expstar::fps {

namespace {

nlohmann::json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
  return z.get_str();
}

mpz_class integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()), 10);
  if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
  throw ParseError("record: integer expected", 0);
}

}  // namespace

nlohmann::json rational_to_json(const mpq_class& q) {
  return nlohmann::json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

mpq_class rational_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("record: [numerator, denominator] expected", 0);
  mpq_class q(integer_from_json(j[0]), integer_from_json(j[1]));
  q.canonicalize();
  return q;
}

nlohmann::json term_records(const TruncatedSeries& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : s.terms()) {
    nlohmann::json rec;
    rec["exponents"] = m.exponents();
    rec["re"] = rational_to_json(c.re());
    rec["im"] = rational_to_json(c.im());
    out.push_back(std::move(rec));
  }
  return out;
}

TruncatedSeries series_from_records(const nlohmann::json& records, int n_vars, int order) {
  TruncatedSeries s(n_vars, order);
  for (const auto& rec : records) {
    const auto exps = rec.at("exponents").get<std::vector<int>>();
    if (static_cast<int>(exps.size()) != n_vars) throw DimensionError("record: exponent length mismatch");
    s.add_term(MultiIndex(exps), GaussRational(rational_from_json(rec.at("re")),
                                               rational_from_json(rec.at("im"))));
  }
  return s;
}

}  // namespace expstar::fps
