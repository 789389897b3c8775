#include "gdmorph/shapes.hpp"

namespace gdmorph {

namespace {

// Hand-traced tyrannosaur silhouette, wound counter-clockwise from the
// tip of the tail: along the back and neck, over the skull, around the
// open jaw, down the chest past the stubby arm, then the hind leg and
// foot, and back along the underside of the tail. Coordinates are in an
// arbitrary frame (roughly 100 units tall, y up); generate() normalizes
// before resampling, so only the proportions matter.
constexpr Vec2 kDinoContour[] = {
    {0.0, 58.0},   // tail tip
    {10.0, 62.0},  {20.0, 65.0},  {30.0, 69.0},  // top of tail
    {40.0, 72.0},  {48.0, 76.0},                 // back
    {54.0, 83.0},  {57.0, 92.0},                 // nape
    {63.0, 96.0},  {72.0, 95.0},                 // crown
    {78.0, 90.0},  {80.0, 84.0},                 // snout
    {71.0, 83.0},  {66.0, 80.0},                 // upper jaw, mouth corner
    {74.0, 76.0},  {68.0, 71.0},                 // lower jaw
    {62.0, 66.0},  {58.0, 58.0},                 // throat
    {55.0, 50.0},  {57.0, 45.0},                 // chest
    {60.0, 42.0},  {58.0, 39.0},                 // arm
    {55.0, 41.0},  {53.0, 43.0},                 // armpit
    {52.0, 36.0},  {46.0, 31.0},  {40.0, 30.0},  // belly
    {42.0, 22.0},  {41.0, 12.0},  {43.0, 6.0},   // front of hind leg
    {49.0, 2.0},   {48.0, 0.0},   {36.0, 1.0},   // foot and toes
    {38.0, 12.0},  {35.0, 22.0},                 // back of shin
    {30.0, 30.0},  {22.0, 38.0},                 // thigh into tail
    {12.0, 46.0},  {4.0, 52.0},                  // underside of tail
};

}  // namespace

std::span<const Vec2> dino_outline() { return kDinoContour; }

}  // namespace gdmorph
