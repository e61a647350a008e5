#include "sgharm/serialize.hpp"

#include <sstream>

#include "sgharm/json_writer.hpp"

namespace sgharm {

namespace {

void write_rational_matrix(JsonWriter& w, const RationalMatrix& m) {
  w.begin_array();
  for (const auto& row : m) {
    w.begin_array();
    for (const Rational& entry : row) w.value(entry.to_string());
    w.end_array();
  }
  w.end_array();
}

void write_decimal_matrix(JsonWriter& w, const RationalMatrix& m) {
  w.begin_array();
  for (const auto& row : m) {
    w.begin_array();
    for (const Rational& entry : row) w.value(format_double(entry.to_double()));
    w.end_array();
  }
  w.end_array();
}

void write_matrix_set(JsonWriter& w, const std::vector<RationalMatrix>& set) {
  w.begin_array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    w.begin_object();
    w.key("index").value(i);
    w.key("rows");
    write_rational_matrix(w, set[i]);
    w.key("rows_decimal");
    write_decimal_matrix(w, set[i]);
    w.end_object();
  }
  w.end_array();
}

}  // namespace

std::string family_to_json(const ExtensionFamily& fam) {
  std::ostringstream out;
  JsonWriter w(out);
  w.begin_object();
  w.key("n").value(fam.alphabet_size);
  w.key("full");
  write_matrix_set(w, fam.full_exact);
  w.key("reduced");
  write_matrix_set(w, fam.reduced_exact);
  w.key("reduced_inverse");
  write_matrix_set(w, fam.reduced_inv_exact);
  w.key("gram");
  write_rational_matrix(w, fam.gram_exact);
  w.end_object();
  return out.str();
}

std::string graph_to_json(const GasketGraph& g) {
  std::ostringstream out;
  JsonWriter w(out);
  const long long denom = 1LL << g.level();
  w.begin_object();
  w.key("n").value(g.alphabet_size());
  w.key("m").value(g.level());
  w.key("vertices");
  w.begin_array();
  for (std::size_t id = 0; id < g.vertex_count(); ++id) {
    const GasketVertex& v = g.vertices()[id];
    w.begin_object();
    w.key("id").value(id);
    w.key("bary");
    w.begin_array();
    for (const std::int32_t num : v.bary_num) {
      w.value(Rational(num, denom).to_string());
    }
    w.end_array();
    w.key("coords");
    w.begin_array();
    for (Eigen::Index k = 0; k < v.coords.size(); ++k) w.value(v.coords[k]);
    w.end_array();
    w.key("boundary").value(v.boundary);
    w.end_object();
  }
  w.end_array();
  w.key("cells");
  w.begin_array();
  for (const GasketCell& cell : g.cells()) {
    w.begin_object();
    w.key("word").value(to_string(cell.word));
    w.key("vertices");
    w.begin_array();
    for (const std::int32_t id : cell.vertex_ids) w.value(static_cast<long long>(id));
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("edges");
  w.begin_array();
  for (const auto& [x, y] : g.edges()) {
    w.begin_array();
    w.value(static_cast<long long>(x)).value(static_cast<long long>(y));
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return out.str();
}

std::string vertex_values_to_csv(const Eigen::VectorXd& values) {
  std::ostringstream out;
  out << "vertex_id,value\n";
  for (Eigen::Index v = 0; v < values.size(); ++v) {
    out << v << ',' << format_double(values[v]) << '\n';
  }
  return out.str();
}

}  // namespace sgharm
