//! Homological CSS codes from polygonal maps on closed surfaces.
//!
//! Build a [`PolygonalMap`] from face lists (or a generator), take its CSS
//! code with [`build_css`], and compute the distance with [`distance`].
//! [`covering`] builds cyclic covers along non-separating two-sided cycles.

pub mod covering;
pub mod css;
pub mod distance;
pub mod generators;
pub mod gf2;
pub mod map;
pub mod tables;

pub use covering::{cut_along, d_cover, find_gluing_cycle, CoverError, CoverSpec, CutResult};
pub use css::{
    build_css, encoding_rate, stabilizer_supports, verify_css, CodeParams, CodeReport, CssCode,
    CssError, CssViolation, Provenance,
};
pub use distance::{
    distance, oracle_distance, shortest_nontrivial_cycle, DistanceError, DistanceResult, Method,
    OracleOutcome, Witness, DEFAULT_BUDGET,
};
pub use generators::{
    builtin, builtin_by_name, gen_even, gen_odd, Builtin, EvenFamilyParams, GenError,
    OddFamilyParams,
};
pub use gf2::{BitMatrix, BitVec, Gf2Error, Rref};
pub use map::{parse_map, to_map_string, MapError, MapFile, MapType, PolygonalMap, VertexType};
