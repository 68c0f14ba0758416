#include "sixv/io.hpp"

#include <sstream>

#include <json.hpp>

#include "sixv/error.hpp"

namespace sixv {

using nlohmann::json;

Domain domain_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("domain JSON: ") + e.what());
  }
  std::string kind = j.value("kind", "");
  if (kind == "plane") {
    std::vector<VertexCoord> v;
    for (const auto& p : j.at("vertices")) v.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    return Domain::plane_patch(std::move(v));
  }
  if (kind == "torus") return Domain::torus(j.at("N").get<int>());
  if (kind == "cylinder") return Domain::cylinder(j.at("N").get<int>(), j.at("M").get<int>());
  throw PreconditionError("domain JSON: unknown kind '" + kind + "'");
}

std::string domain_to_json(const Domain& d) {
  json j;
  switch (d.kind()) {
    case DomainKind::Torus:
      j = {{"kind", "torus"}, {"N", d.size_n()}};
      break;
    case DomainKind::Cylinder:
      j = {{"kind", "cylinder"}, {"N", d.size_n()}, {"M", d.size_m()}};
      break;
    case DomainKind::PlanePatch: {
      json verts = json::array();
      for (int vi = 0; vi < d.vertex_count(); ++vi)
        verts.push_back({d.vertex(vi).x, d.vertex(vi).y});
      j = {{"kind", "plane"}, {"vertices", verts}};
      break;
    }
  }
  return j.dump();
}

std::string heights_to_csv(const Domain& d, const Heights& h) {
  std::ostringstream os;
  os << "x,y,h\n";
  for (int f = 0; f < d.face_count(); ++f)
    os << d.face(f).x << "," << d.face(f).y << "," << h[f] << "\n";
  return os.str();
}

Heights heights_from_csv(const Domain& d, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "x,y,h")
    throw PreconditionError("height CSV: bad header");
  Heights h(d.face_count(), INT32_MIN);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int x, y, v;
    char c1, c2;
    std::istringstream ls(line);
    if (!(ls >> x >> c1 >> y >> c2 >> v) || c1 != ',' || c2 != ',')
      throw PreconditionError("height CSV: bad row '" + line + "'");
    int f = d.index_of({x, y});
    if (f < 0) throw PreconditionError("height CSV: face outside domain");
    h[f] = v;
  }
  for (int f = 0; f < d.face_count(); ++f)
    if (h[f] == INT32_MIN) throw PreconditionError("height CSV: missing face");
  return h;
}

std::string arrows_to_csv(const Domain& d, const Arrows& a) {
  std::ostringstream os;
  os << "x,y,dir,orient\n";
  for (int e = 0; e < d.edge_count(); ++e) {
    auto r = d.edge(e);
    os << d.face(r.face).x << "," << d.face(r.face).y << "," << (r.dir == DirE ? 'E' : 'N') << ","
       << int(a[e]) << "\n";
  }
  return os.str();
}

Arrows arrows_from_csv(const Domain& d, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "x,y,dir,orient")
    throw PreconditionError("arrow CSV: bad header");
  Arrows a(d.edge_count(), 2);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int x, y, o;
    char c1, c2, c3, dir;
    std::istringstream ls(line);
    if (!(ls >> x >> c1 >> y >> c2 >> dir >> c3 >> o))
      throw PreconditionError("arrow CSV: bad row '" + line + "'");
    int f = d.index_of({x, y});
    if (f < 0) throw PreconditionError("arrow CSV: face outside domain");
    int e = d.edge_index(f, dir == 'E' ? DirE : DirN);
    if (e < 0) throw PreconditionError("arrow CSV: no such edge");
    a[e] = static_cast<std::uint8_t>(o);
  }
  for (auto v : a)
    if (v > 1) throw PreconditionError("arrow CSV: missing edge");
  return a;
}

HeightPred pred_from_string(const std::string& s, int k) {
  if (s == "h>=k") return {HeightPred::GE, k};
  if (s == "h<=k") return {HeightPred::LE, k};
  if (s == "h<k") return {HeightPred::LT, k};
  if (s == "|h|>=k") return {HeightPred::AbsGE, k};
  if (s == "|h|<=k") return {HeightPred::AbsLE, k};
  throw PreconditionError("unknown predicate '" + s + "'");
}

std::string pred_to_string(const HeightPred& p) {
  switch (p.kind) {
    case HeightPred::GE: return "h>=k";
    case HeightPred::LE: return "h<=k";
    case HeightPred::LT: return "h<k";
    case HeightPred::AbsGE: return "|h|>=k";
    case HeightPred::AbsLE: return "|h|<=k";
  }
  return "";
}

bool EventSpec::eval(const Domain& d, const Heights& h) const {
  if (kind == CircuitEvent) return circuit(d, h, ann_n, ann_N, pred, adjacency);
  if (kind == QuadCrossEvent) {
    if (!quad_) quad_ = std::make_shared<Quad>(d, marks[0], marks[1], marks[2], marks[3]);
    return crossing(d, h, quad_->arc(arc_from), quad_->arc(arc_to), pred, adjacency);
  }
  std::vector<int> ia, ib;
  for (auto f : a) {
    int i = d.index_of(f);
    if (i < 0) throw PreconditionError("event: face outside domain");
    ia.push_back(i);
  }
  for (auto f : b) {
    int i = d.index_of(f);
    if (i < 0) throw PreconditionError("event: face outside domain");
    ib.push_back(i);
  }
  return crossing(d, h, ia, ib, pred, adjacency);
}

EventSpec event_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("event JSON: ") + e.what());
  }
  EventSpec spec;
  std::string kind = j.value("kind", "");
  spec.pred = pred_from_string(j.value("pred", "h>=k"), j.value("k", 0));
  spec.adjacency = j.value("adjacency", "edge") == "cross" ? Adjacency::Cross : Adjacency::Edge;
  if (kind == "cross") {
    spec.kind = EventSpec::CrossEvent;
    for (const auto& p : j.at("A")) spec.a.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    for (const auto& p : j.at("B")) spec.b.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    return spec;
  }
  if (kind == "circuit") {
    spec.kind = EventSpec::CircuitEvent;
    spec.ann_n = j.at("n").get<int>();
    spec.ann_N = j.at("N").get<int>();
    return spec;
  }
  if (kind == "quadcross") {
    spec.kind = EventSpec::QuadCrossEvent;
    const auto& marks = j.at("marks");
    if (marks.size() != 4) throw PreconditionError("event JSON: quadcross needs 4 marks");
    for (int i = 0; i < 4; ++i)
      spec.marks[i] = {marks.at(i).at(0).get<int>(), marks.at(i).at(1).get<int>()};
    spec.arc_from = j.value("from", 0);
    spec.arc_to = j.value("to", 2);
    if (spec.arc_from < 0 || spec.arc_from > 3 || spec.arc_to < 0 || spec.arc_to > 3)
      throw PreconditionError("event JSON: arc index out of range");
    return spec;
  }
  throw PreconditionError("event JSON: unknown kind '" + kind + "'");
}

std::string event_to_json(const EventSpec& spec) {
  json j;
  j["pred"] = pred_to_string(spec.pred);
  j["k"] = spec.pred.k;
  j["adjacency"] = spec.adjacency == Adjacency::Cross ? "cross" : "edge";
  if (spec.kind == EventSpec::CircuitEvent) {
    j["kind"] = "circuit";
    j["n"] = spec.ann_n;
    j["N"] = spec.ann_N;
  } else if (spec.kind == EventSpec::QuadCrossEvent) {
    j["kind"] = "quadcross";
    json m = json::array();
    for (auto f : spec.marks) m.push_back({f.x, f.y});
    j["marks"] = m;
    j["from"] = spec.arc_from;
    j["to"] = spec.arc_to;
  } else {
    j["kind"] = "cross";
    json a = json::array(), b = json::array();
    for (auto f : spec.a) a.push_back({f.x, f.y});
    for (auto f : spec.b) b.push_back({f.x, f.y});
    j["A"] = a;
    j["B"] = b;
  }
  return j.dump();
}

}  // namespace sixv
