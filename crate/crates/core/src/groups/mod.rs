//! Normal-form arithmetic for `B(1,l)`, `T_n`, `C_n` and `Z^n`.

mod ball;
mod element;
mod family;
mod lfraction;
mod presentation;
mod word;

pub use ball::{generate_ball, Ball, DEFAULT_ELEMENT_CAP};
pub use element::{AbelianElement, BsElement, CnElement, Element, TararinElement};
pub use family::{Family, Generator, CN_BASE};
pub use lfraction::LFraction;
pub use presentation::{relators, verify_presentation, PresentationReport, RelatorResult};
pub use word::{eval_word, Word};
