#include <cstdio>
#include <string>

#include "json.hpp"

#include "rcohull/error.hpp"
#include "rcohull/laminate.hpp"

namespace rcohull {

namespace {

void put_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void put_matrix(std::string& out, const Mat2& m) {
  out += '[';
  for (int i = 0; i < 4; ++i) {
    if (i) out += ", ";
    put_number(out, m.entries()[static_cast<std::size_t>(i)]);
  }
  out += ']';
}

void emit(const LaminateTree& t, std::size_t i, int indent, std::string& out) {
  const LaminateNode& n = t.node(i);
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  out += "{\n";
  if (n.is_leaf()) {
    out += pad + "\"leaf_matrix\": ";
    put_matrix(out, n.matrix);
    out += ",\n" + pad + "\"matched_point\": [";
    put_number(out, n.matched.a);
    out += ", ";
    put_number(out, n.matched.b);
    out += "]\n";
  } else {
    out += pad + "\"matrix\": ";
    put_matrix(out, n.matrix);
    out += ",\n" + pad + "\"weight\": ";
    put_number(out, n.weight);
    out += ",\n" + pad + "\"minus\": ";
    emit(t, static_cast<std::size_t>(n.minus), indent + 2, out);
    out += ",\n" + pad + "\"plus\": ";
    emit(t, static_cast<std::size_t>(n.plus), indent + 2, out);
    out += "\n";
  }
  out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
}

Mat2 read_matrix(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::ParseError, "matrix needs 4 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

LaminateTree read_node(const nlohmann::json& j, int depth) {
  if (depth > 4096) throw Error(ErrorCode::ParseError, "certificate nested too deeply");
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "certificate node must be an object");
  if (j.contains("leaf_matrix")) {
    const auto& p = j.at("matched_point");
    if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::ParseError, "matched_point needs 2 numbers");
    return LaminateTree::leaf(read_matrix(j.at("leaf_matrix")), {p[0].get<double>(), p[1].get<double>()});
  }
  return LaminateTree::split(read_matrix(j.at("matrix")), j.at("weight").get<double>(),
                             read_node(j.at("minus"), depth + 1), read_node(j.at("plus"), depth + 1));
}

}  // namespace

std::string to_certificate(const LaminateTree& tree) {
  std::string out;
  emit(tree, 0, 0, out);
  out += '\n';
  return out;
}

LaminateTree parse_certificate(std::string_view text) {
  try {
    return read_node(nlohmann::json::parse(text.begin(), text.end()), 0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad certificate: ") + e.what());
  }
}

}  // namespace rcohull
