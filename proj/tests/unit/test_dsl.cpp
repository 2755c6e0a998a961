#include "doctest.h"
#include "setcalc/dsl.hpp"

using namespace setcalc;

namespace {

const char* kMinimal = R"({
  "dim_x": 1,
  "dim_y": 1,
  "cone": {"generators": [[1]]},
  "maps": {"F": {"kind": "const_set", "set": {"vertices": [[0]]}}}
})";

// F(x) = {x} x [-2, inf) for x > 0, {0} x [0, inf) otherwise.
const char* kPiecewise = R"({
  "dim_x": 1,
  "dim_y": 2,
  "cone": {"generators": [[1, 0], [0, 1]]},
  "maps": {
    "F": {
      "kind": "branch",
      "guard": {"kind": "coord", "index": 0},
      "nonneg_child": {"kind": "sum", "children": [
        {"kind": "affine_arg", "T": [[1], [0]], "b": [0, -2]},
        {"kind": "const_set", "set": {"vertices": [[0, 0]], "rays": [[0, 1]]}}
      ]},
      "neg_child": {"kind": "const_set", "set": {"vertices": [[0, 0]], "rays": [[0, 1]]}}
    },
    "EpiF": {"kind": "epi", "child": {"kind": "ref", "name": "F"}}
  },
  "candidates": {"zero": [[0], [0]]}
})";

template <class E>
std::string error_where(const std::string& text) {
  try {
    parse(text);
  } catch (const E& e) {
    return e.where();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("parse: minimal file") {
  const auto pf = parse(kMinimal);
  CHECK(pf.dim_x == 1);
  REQUIRE(pf.maps.size() == 1);
  const auto s = eval_map(*pf.maps[0].second, make_vector({3}));
  CHECK(s.vertices().size() == 1);
}

TEST_CASE("parse: piecewise map") {
  const auto pf = parse(kPiecewise);
  const auto& F = **find_named(pf.maps, "F");
  CHECK(F.kind == MapExpr::Kind::branch);
  CHECK(F.children[1]->kind == MapExpr::Kind::const_set);
  const auto at1 = eval_map(F, make_vector({1}));
  REQUIRE(at1.vertices().size() == 1);
  CHECK((at1.vertices()[0] - make_vector({1, -2})).norm() == 0.0);
  REQUIRE(at1.rays().size() == 1);
  CHECK((at1.rays()[0] - make_vector({0, 1})).norm() == 0.0);
  // Guard ties take the second child.
  const auto at0 = eval_map(F, make_vector({0}));
  CHECK((at0.vertices()[0] - make_vector({0, 0})).norm() == 0.0);
  const auto epi = eval_map(**find_named(pf.maps, "EpiF"), make_vector({0.5}));
  CHECK(epi.rays().size() == 2);
}

TEST_CASE("parse: error classes and locations") {
  std::string dangling = kMinimal;
  dangling.replace(dangling.find(R"({"kind": "const_set")"), std::string(R"({"kind": "const_set", "set": {"vertices": [[0]]}})").size(),
                   R"({"kind": "ref", "name": "G"})");
  CHECK(error_where<DanglingReference>(dangling) == "/maps/F/name");

  std::string unknown = kMinimal;
  unknown.replace(unknown.find("const_set"), 9, "warp");
  CHECK(error_where<UnknownNodeKind>(unknown) == "/maps/F/kind");

  std::string dims = kMinimal;
  dims.replace(dims.find("[[0]]"), 5, "[[0, 1]]");
  CHECK(error_where<FileDimensionMismatch>(dims) == "/maps/F/set/vertices/0");

  CHECK(error_where<SyntaxError>("{\n  \"dim_x\": 1,\n  oops\n}") == "3:3");
  CHECK(error_where<SchemaError>(R"({"dim_x": 1, "dim_y": 1})") == "/cone");
  CHECK(error_where<SchemaError>(R"({"dim_x": 1, "dim_y": 1, "cone": {"generators": [[1], [-1]]}})") == "/cone");
  CHECK(error_where<SchemaError>(R"({"dim_x": 0, "dim_y": 1, "cone": {"generators": [[1]]}})") == "/dim_x");

  std::string cyc = kMinimal;
  cyc.replace(cyc.find(R"({"kind": "const_set")"), std::string(R"({"kind": "const_set", "set": {"vertices": [[0]]}})").size(),
              R"({"kind": "ref", "name": "F"})");
  CHECK(error_where<SchemaError>(cyc) == "/maps/F");
}

TEST_CASE("scalar expressions") {
  const Vector x2 = make_vector({2});
  CHECK(eval_scalar(*expr::dist_to_set({ConicPolytope(1, {make_vector({0}), make_vector({1})}, {}, true)}), x2) ==
        doctest::Approx(1.0));
  CHECK(eval_scalar(*expr::norm(Vector::Zero(1)), Vector::Zero(1)) == 0.0);
  CHECK(eval_scalar(*expr::affine(make_vector({1, 1}), -1), make_vector({1, 1})) == 1.0);
  CHECK(eval_scalar(*expr::product({expr::coord(0), expr::coord(0)}), make_vector({3})) == 9.0);
  const auto f = expr::scalar_dir(expr::norm(Vector::Zero(1)), make_vector({1}));
  CHECK(eval_map(*f, x2).vertices()[0][0] == 2.0);
  const auto e = expr::epi(expr::const_set(ConicPolytope::singleton(Vector::Zero(2))), PolyCone::orthant(2));
  CHECK(eval_map(*e, Vector::Zero(1)).rays().size() == 2);
}

TEST_CASE("serialize: round trip is the identity on canonical text") {
  for (const char* text : {kMinimal, kPiecewise}) {
    const auto pf = parse(text);
    const std::string once = serialize(pf);
    const std::string twice = serialize(parse(once));
    CHECK(once == twice);
  }
  // Non-trivial doubles survive exactly.
  std::string f = kMinimal;
  f.replace(f.find("[[0]]"), 5, "[[0.1234567890123456789]]");
  const auto pf = parse(f);
  const auto back = parse(serialize(pf));
  CHECK(eval_map(*back.maps[0].second, Vector::Zero(1)).vertices()[0][0] ==
        eval_map(*pf.maps[0].second, Vector::Zero(1)).vertices()[0][0]);
}
