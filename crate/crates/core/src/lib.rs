//! Combinatorial representation theory of cyclotomic Hecke algebras in
//! exact arithmetic: multipartitions and tableaux, crystals, graded Specht
//! characters, Fock spaces, seminormal KLR representations and graded
//! decomposition numbers.

pub mod cartan;
pub mod character;
pub mod cli;
pub mod crystal;
pub mod decomp;
pub mod error;
pub mod fock;
pub mod laurent;
pub mod multipartition;
pub mod seminormal;
pub mod tableaux;

pub use character::{QCharacter, ResidueSeq};
pub use cartan::{DominantWeight, Params, QuantumChar, Residue, RootElement};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use multipartition::{Multipartition, Node};
pub use tableaux::{leading_tableau, specht_qcharacter, standard_tableaux, Permutation, Tableau};
