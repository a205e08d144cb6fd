//! Constructions on binary complexes: shortening, truncation, total complexes
//! of ladders and of 3x3 diagrams.

pub mod nenashev;
pub mod shorten;
pub mod total;

pub use nenashev::{nenashev_total, pad_back, pad_both, pad_front, remark_objects, NenashevDiagram, RemarkObjects};
pub use shorten::{
    grayson_shorten, include_ik, ses_shorten, shorten_ladder, shorten_pk, shorten_with, tau_of, truncate_ge1,
    truncate_ge1_with, truncate_le2, truncate_le2_with, ShorteningData,
};
pub use total::ladder_total;
