//! Commutator semilattices, derivations, and an exhaustive checker for a
//! nilpotency class bound from Hall's criterion on finite groups.
//!
//! If `E` has a normal subgroup `N` of nilpotency class `c` and `E/[N, N]`
//! has class `d`, then `E` has class at most `cd + (c - 1)(d - 1)`. This
//! crate checks that bound, and each inequality its proof goes through, on
//! concrete groups:
//!
//! * [`lattice`]: finite commutator semilattices as explicit tables, with
//!   axiom checkers and derivations.
//! * [`calculus`]: iterated derivations and the inequalities they obey.
//! * [`group`]: finite groups, subgroup algebra, quotients and the lower
//!   central series.
//! * [`hall`]: the normal-subgroup lattice of a group, the bound check, the
//!   descent chain behind it, and the sharpness scan.
//! * [`corpus`] and [`commands`]: manifests of groups and the batch commands
//!   behind the `hallbound` binary.
//!
//! Runnable walkthroughs live in `examples/`.

pub mod calculus;
pub mod commands;
pub mod corpus;
pub mod group;
pub mod hall;
pub mod lattice;
