//! Even-integer continued fractions, the Farey tree and the theta group.
//!
//! Every real number has an expansion `b1 + 1/(b2 + 1/(b3 + ...))` with all
//! `b_i` even. Its convergents are the vertices along a path in the Farey
//! tree, the subgraph of the Farey graph spanned by the ∞-rationals.

pub mod approx;
pub mod eicf;
pub mod exact;
pub mod farey;
pub mod mobius;

pub use approx::{
    convergent_certificate, ford_circle, horo_radius, horo_radius_approx, is_strong_approximant, tangent,
    tangent_geometric, ApproxError, FordCircle,
};
pub use eicf::{
    alternate_expansion, enclosure, expand_approx, expand_rational, expand_via_intervals, ConvergentPair, EicfError,
    EicfSeq, Tail,
};
pub use exact::{ApproxReal, ExactError, ExtRational, VertexClass};
pub use farey::{
    adjacent_in_f, adjacent_in_g, enumerate_inf_rationals, locate, neighbors_in_f, neighbors_in_f_bounded, path_to,
    FareyEdge, FareyError, FareyInterval,
};
pub use mobius::{Generator, GeneratorWord, IntMobius, MobiusError};
