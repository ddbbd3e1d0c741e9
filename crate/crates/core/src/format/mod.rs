//! Textual documents: `hsc/1` structure constants and `hpres/1`
//! presentations.

mod expr;
mod hpres;
mod hsc;

pub use expr::{format_poly, parse_poly, Poly, Scope};
pub use hpres::{example_a_document, example_b_document, HpresDocument, HPRES_TAG};
pub use hsc::{from_hsc, to_hsc, HSC_TAG, MAX_HSC_DIM};

use crate::builders::presentation_hopf_unchecked;
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Hsc,
    Hpres,
}

/// Read the `format` tag of a document.
pub fn document_kind(text: &str) -> Result<DocumentKind> {
    #[derive(serde::Deserialize)]
    struct Tag {
        format: String,
    }
    let tag: Tag = serde_json::from_str::<serde_json::Value>(text)
        .and_then(serde_json::from_value)
        .map_err(|e| Error::Parse(e.to_string()))?;
    match tag.format.as_str() {
        HSC_TAG => Ok(DocumentKind::Hsc),
        HPRES_TAG => Ok(DocumentKind::Hpres),
        other => Err(Error::Parse(format!("unknown format tag {other:?}"))),
    }
}

/// Load either document kind as an unverified Hopf algebra.
pub fn load_hopf(text: &str) -> Result<HopfAlgebra> {
    match document_kind(text)? {
        DocumentKind::Hsc => from_hsc(text),
        DocumentKind::Hpres => presentation_hopf_unchecked(&HpresDocument::parse(text)?.to_presentation()?),
    }
}
