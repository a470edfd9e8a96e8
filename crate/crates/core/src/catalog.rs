//! Eighteen quadratic APN functions on `F_{2^8}` of the shape `G(x^3)`, in
//! the field preset `f256_paper`, with the automorphism-group orders and
//! isomorphism classes recorded for their Cayley graphs.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::funcspace::{FuncError, PolyFn};
use crate::gf::{FieldCtx, FieldSpec};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CatalogEntry {
    pub number: usize,
    pub text: &'static str,
    /// expected `|Aut|` of the Cayley graph on the image set
    pub aut_order: u64,
    /// smallest entry number in the same isomorphism class
    pub class_rep: usize,
}

const P9: u64 = 1 << 9;
const P10: u64 = 1 << 10;
const P11: u64 = 1 << 11;
const CYCLO: u64 = (1 << 11) * 5 * 17;

const fn entry(number: usize, text: &'static str, aut_order: u64, class_rep: usize) -> CatalogEntry {
    CatalogEntry { number, text, aut_order, class_rep }
}

pub const CATALOG: [CatalogEntry; 18] = [
    entry(
        1,
        "w^{132}x^{192} + w^{37}x^{144} + w^{91}x^{132} + w^{188}x^{129} + w^{76}x^{96} + w^{162}x^{72} + w^{46}x^{66} + w^{252}x^{48} + w^{42}x^{36} + w^{81}x^{33} + w^{83}x^{24} + w^{13}x^{18} + w^{185}x^{12} + w^{163}x^{9} + w^{216}x^{6} + w^{181}x^{3}",
        P9,
        1,
    ),
    entry(2, "x^{144} + x^6 + x^3", P11, 2),
    entry(
        3,
        "w^{91}x^{192} + w^{124}x^{144} + w^{214}x^{132} + w^{106}x^{129} + w^{59}x^{96} + w^{172}x^{72} + w^{138}x^{66} + w^{163}x^{48} + w^{58}x^{36} + w^{100}x^{33} + w^{32}x^{24} + w^{250}x^{18} + w^{45}x^{12} + w^{241}x^{6} + w^{157}x^{3}",
        1 << 8,
        3,
    ),
    entry(4, "w^{21}x^{144} + w^{183}x^{66} + w^{245}x^{33} + x^3", P10, 4),
    entry(
        5,
        "w^{155}x^{192} + w^{96}x^{144} + w^{223}x^{132} + w^{77}x^{129} + w^{88}x^{96} + w^{232}x^{72} + w^{69}x^{66} + w^{142}x^{48} + w^{168}x^{36} + x^{33} + w^{145}x^{24} + w^{234}x^{18} + w^{202}x^{12} + w^{94}x^{9} + w^{189}x^{6} + w^{241}x^{3}",
        P9,
        5,
    ),
    entry(6, "x^{72} + x^6 + x^3", P11, 2),
    entry(
        7,
        "w^{126}x^{192} + w^{119}x^{144} + w^{221}x^{132} + w^{222}x^{129} + w^{79}x^{96} + w^{221}x^{72} + w^{187}x^{66} + w^{148}x^{48} + w^{187}x^{36} + w^{237}x^{24} + w^{231}x^{12} + w^{119}x^{9} + w^{244}x^{6} + w^{236}x^{3}",
        P10,
        7,
    ),
    entry(
        8,
        "w^{25}x^{192} + w^{140}x^{144} + w^{59}x^{132} + w^{129}x^{129} + w^{42}x^{96} + w^{164}x^{72} + w^{149}x^{66} + w^{119}x^{48} + w^{74}x^{36} + w^{211}x^{33} + w^{9}x^{24} + w^{46}x^{18} + w^{130}x^{12} + w^{185}x^{9} + w^{147}x^{6} + w^{27}x^{3}",
        P10,
        8,
    ),
    entry(
        9,
        "w^{151}x^{192} + w^{13}x^{144} + w^{58}x^{132} + w^{143}x^{129} + w^{110}x^{96} + wx^{72} + w^{244}x^{66} + w^{26}x^{48} + w^{180}x^{36} + w^{8}x^{33} + w^{69}x^{24} + w^{76}x^{18} + w^{201}x^{12} + w^{201}x^{9} + w^{19}x^{6} + w^{107}x^{3}",
        P9,
        9,
    ),
    entry(10, "w^{135}x^{144} + w^{120}x^{66} + w^{65}x^{18} + x^3", P10, 10),
    entry(
        11,
        "w^{113}x^{192} + w^{56}x^{144} + w^{68}x^{132} + w^{155}x^{129} + w^{91}x^{96} + w^{78}x^{72} + w^{159}x^{66} + w^{30}x^{48} + w^{194}x^{36} + w^{14}x^{33} + w^{238}x^{24} + w^{91}x^{18} + w^{100}x^{12} + w^{96}x^{9} + w^{222}x^{6} + w^{178}x^{3}",
        1 << 8,
        11,
    ),
    entry(
        12,
        "w^{86}x^{192} + w^{224}x^{129} + w^{163}x^{96} + w^{102}x^{66} + w^{129}x^{48} + w^{102}x^{36} + w^{170}x^{33} + w^{14}x^{24} + w^{170}x^{18} + w^{101}x^{12} + w^{58}x^{6} + w^{254}x^{3}",
        P10,
        12,
    ),
    entry(13, "x^9", CYCLO, 13),
    entry(14, "x^3", CYCLO, 13),
    entry(
        15,
        "w^{95}x^{192} + w^{242}x^{144} + w^{195}x^{132} + w^{98}x^{129} + w^{84}x^{96} + w^{45}x^{72} + w^{234}x^{66} + w^{202}x^{48} + w^{159}x^{36} + w^{58}x^{33} + w^{23}x^{24} + w^{148}x^{18} + w^{230}x^{12} + w^{32}x^{9} + w^{54}x^{6} + w^{41}x^{3}",
        P10,
        15,
    ),
    entry(
        16,
        "w^{189}x^{192} + w^{143}x^{144} + w^{22}x^{132} + w^{21}x^{129} + w^{133}x^{96} + w^{239}x^{72} + w^{229}x^{66} + w^{31}x^{48} + w^{187}x^{36} + w^{185}x^{33} + w^{68}x^{24} + w^{236}x^{18} + w^{75}x^{12} + w^{91}x^{9} + w^{97}x^{6} + w^{160}x^{3}",
        P9,
        16,
    ),
    entry(17, "x^{57}", CYCLO, 13),
    entry(18, "w^{67}x^{192} + w^{182}x^{132} + w^{24}x^{6} + x^3", P10, 18),
];

#[derive(Debug, Error)]
#[error("catalog entry {number}: {source}")]
pub struct CatalogError {
    pub number: usize,
    #[source]
    pub source: FuncError,
}

pub fn field() -> Arc<FieldCtx> {
    FieldCtx::build(FieldSpec::f256_paper()).expect("preset field is valid")
}

pub fn get(number: usize) -> Option<&'static CatalogEntry> {
    CATALOG.get(number.checked_sub(1)?)
}

impl CatalogEntry {
    pub fn parse(&self, ctx: &Arc<FieldCtx>) -> Result<PolyFn, CatalogError> {
        PolyFn::parse_text(ctx, self.text).map_err(|source| CatalogError { number: self.number, source })
    }
}

pub fn load_catalog(ctx: &Arc<FieldCtx>) -> Result<Vec<(CatalogEntry, PolyFn)>, CatalogError> {
    CATALOG.iter().map(|e| Ok((*e, e.parse(ctx)?))).collect()
}

/// Expected isomorphism classes, each sorted, ordered by smallest member.
pub fn expected_partition() -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for e in &CATALOG {
        match classes.iter_mut().find(|c| c[0] == e.class_rep) {
            Some(c) => c.push(e.number),
            None => classes.push(vec![e.number]),
        }
    }
    classes
}

/// Whitespace- and brace-insensitive form used for round-trip comparison.
pub fn normalize(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace() && !matches!(c, '{' | '}' | '$')).collect()
}
