//! Cell-complex data model: vertices, edges, cycles, holes, skeletons,
//! vortex cycles and vortex nerves, with structural validation.

mod cells;
mod model;
mod validate;
mod vortex;

pub use cells::{geometry_of, point_sets_meet, set_intersection_nonempty, CellGeometry, CellRef, Witness};
pub use model::{
    CellComplex, ComplexParts, Cycle, Edge, Hole, Payload, Skeleton, SkeletonKind, SuppliedProbe, Vertex, VortexCycle,
    VortexNerve,
};
pub use validate::{
    classify_skeleton, validate_complex, validate_cycle, validate_skeleton, ValidationReport, Violation,
};
pub use vortex::{
    build_vortex_cycle, cycles_meet, detect_nerve, hole_destroys_cycle, nerve_failure, shared_interior_area,
};
