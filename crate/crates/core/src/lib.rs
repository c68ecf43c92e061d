//! Maximal perimeters of simple polygons in disks of the Euclidean plane,
//! the hyperbolic plane and the sphere.
//!
//! * [`geometry`]: metric kernel, charts, disks and segment intersection.
//! * [`order`]: the projection order along a chord and the crossing test.
//! * [`bound`]: the isosceles-triangle bound and its optimizer.
//! * [`polygon`]: simple polygons and the near-extremal constructions.
//! * [`lemma`]: the chain-lengthening move and its spherical failure.
//! * [`search`]: randomized hill climbing against the bound.

pub mod bound;
pub mod error;
pub mod geometry;
pub mod lemma;
pub mod order;
pub mod polygon;
pub mod search;

pub use bound::{even_n_supremum, max_inscribed_triangle_perimeter, optimal_bound, supremum, IsoscelesBound};
pub use error::{Error, Result};
pub use geometry::{Disk, GPoint, GSegment, GeodesicLine, Geometry, Intersection, Isometry};
pub use lemma::{lemma_move, spherical_counterexample, LemmaInstance, LemmaViolation, MoveResult};
pub use order::{find_nonalternating_pair, OrderRel, ProjectionOrderContext, SignSequence};
pub use polygon::{construct_even_zigzag, construct_odd_extremal, PolygonRecord, SimplePolygon};
pub use search::{hill_climb, random_simple_polygon, SearchConfig, SearchReport};
