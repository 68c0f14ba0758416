#pragma once

#include <array>
#include <memory>
#include <string>

#include "sixv/events.hpp"
#include "sixv/height.hpp"

namespace sixv {

// Domain file format:
//   {"kind":"plane","vertices":[[x,y],...]}
//   {"kind":"torus","N":n}
//   {"kind":"cylinder","N":n,"M":m}
Domain domain_from_json(const std::string& text);
std::string domain_to_json(const Domain& d);

// Height dumps: CSV "x,y,h" rows; bit-exact round trip.
std::string heights_to_csv(const Domain& d, const Heights& h);
Heights heights_from_csv(const Domain& d, const std::string& text);

// Arrow dumps: CSV "x,y,dir,orient" with dir in {E,N} naming the owning
// face's edge slot.
std::string arrows_to_csv(const Domain& d, const Arrows& a);
Arrows arrows_from_csv(const Domain& d, const std::string& text);

// Event specification:
//   {"kind":"cross","A":[[x,y],...],"B":[[x,y],...],
//    "pred":"h>=k"|"h<=k"|"h<k"|"|h|>=k"|"|h|<=k","k":int,
//    "adjacency":"edge"|"cross"}
//   {"kind":"circuit","n":int,"N":int,"pred":...,"k":int}
//   {"kind":"quadcross","marks":[[x,y],...4],"from":0..3,"to":0..3,
//    "pred":...,"k":int,"adjacency":...}   (arcs 0=(ab) 1=(bc) 2=(cd) 3=(da))
struct EventSpec {
  enum Kind { CrossEvent, CircuitEvent, QuadCrossEvent } kind = CrossEvent;
  std::vector<FaceCoord> a, b;
  HeightPred pred;
  Adjacency adjacency = Adjacency::Edge;
  int ann_n = 0, ann_N = 0;
  std::array<FaceCoord, 4> marks{};
  int arc_from = 0, arc_to = 2;

  bool eval(const Domain& d, const Heights& h) const;

private:
  mutable std::shared_ptr<Quad> quad_;  // built on first evaluation
};
EventSpec event_from_json(const std::string& text);
std::string event_to_json(const EventSpec& spec);

HeightPred pred_from_string(const std::string& s, int k);
std::string pred_to_string(const HeightPred& p);

}  // namespace sixv
