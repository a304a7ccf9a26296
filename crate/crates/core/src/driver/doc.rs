use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::{Event, Mode, RunReport};
use crate::basis::ModuleBasis;
use crate::extpoly::ExtPolynomial;
use crate::intpoly::IntPolynomial;
use crate::modpoly::ModPolynomial;
use crate::newton::{FactorReport, Obstruction, Side};

fn dec(x: &BigInt) -> String {
    x.to_string()
}

fn coeffs(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(dec).collect()
}

fn mod_coeffs(p: &ModPolynomial) -> Vec<String> {
    p.coeffs().iter().map(dec).collect()
}

fn ext_coeffs(p: &ExtPolynomial) -> Vec<Vec<String>> {
    p.coeffs().iter().map(mod_coeffs).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartDoc {
    pub base: String,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EventDoc {
    pub modulus: String,
    pub event: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<PartDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SideDoc {
    pub start: usize,
    pub h: u32,
    pub e: u32,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorDoc {
    pub g: Vec<String>,
    pub ell: usize,
    pub vertices: Vec<(usize, u32)>,
    pub sides: Vec<SideDoc>,
    pub residuals: Vec<Vec<Vec<String>>>,
    pub all_slopes_integral: bool,
    pub regular: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ElementDoc {
    pub numerator: Vec<String>,
    pub denominator: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModuleDoc {
    pub denominator: String,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisDoc {
    pub modulus: String,
    pub exponent: u32,
    pub squarefree: Option<bool>,
    pub all_slopes_integral: bool,
    pub index_exponent: u64,
    pub factors: Vec<FactorDoc>,
    pub elements: Vec<ElementDoc>,
    pub module: ModuleDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionDoc {
    pub modulus: String,
    pub g: Vec<String>,
    pub side: SideDoc,
    pub residual: Vec<Vec<String>>,
    pub exponents: Vec<u32>,
}

/// The JSON result of a run. Contains no timing, so equal inputs give equal bytes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputDocument {
    pub f: Vec<String>,
    pub mode: &'static str,
    #[serde(rename = "N")]
    pub modulus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
    pub small_primes: BTreeMap<u64, u32>,
    pub coprime_base: Vec<PartDoc>,
    pub moduli_log: Vec<EventDoc>,
    pub bases: Vec<BasisDoc>,
    pub patched: Option<ModuleDoc>,
    pub status: &'static str,
    pub obstruction: Option<ObstructionDoc>,
    pub unfactored: Vec<String>,
}

fn side_doc(s: &Side) -> SideDoc {
    SideDoc { start: s.s, h: s.h, e: s.e, length: s.length }
}

fn parts_doc(parts: &[(BigInt, u32)]) -> Vec<PartDoc> {
    parts.iter().map(|(b, e)| PartDoc { base: dec(b), exponent: *e }).collect()
}

impl From<&ModuleBasis> for ModuleDoc {
    fn from(m: &ModuleBasis) -> Self {
        ModuleDoc { denominator: dec(&m.denominator), rows: m.rows.iter().map(|r| r.iter().map(dec).collect()).collect() }
    }
}

impl From<&Event> for EventDoc {
    fn from(e: &Event) -> Self {
        EventDoc {
            modulus: dec(&e.modulus),
            event: e.kind.as_str(),
            divisor: e.divisor.as_ref().map(dec),
            parts: parts_doc(&e.parts),
            g: e.factor.as_ref().map(|(g, _)| coeffs(g)),
            factor: e.factor.as_ref().map(|(_, b)| coeffs(b)),
        }
    }
}

impl From<&FactorReport> for FactorDoc {
    fn from(r: &FactorReport) -> Self {
        FactorDoc {
            g: mod_coeffs(&r.g),
            ell: r.ell,
            vertices: r.polygon.vertices.clone(),
            sides: r.polygon.sides.iter().map(side_doc).collect(),
            residuals: r.residuals.iter().map(|res| ext_coeffs(&res.poly)).collect(),
            all_slopes_integral: r.all_slopes_integral,
            regular: r.regular,
        }
    }
}

impl From<&Obstruction> for ObstructionDoc {
    fn from(o: &Obstruction) -> Self {
        ObstructionDoc {
            modulus: dec(&o.modulus),
            g: mod_coeffs(&o.g),
            side: side_doc(&o.side),
            residual: ext_coeffs(&o.residual),
            exponents: o.exponents.clone(),
        }
    }
}

impl RunReport {
    pub fn to_document(&self) -> OutputDocument {
        let bases = self
            .based
            .iter()
            .map(|b| BasisDoc {
                modulus: dec(&b.modulus),
                exponent: b.exponent,
                squarefree: b.squarefree,
                all_slopes_integral: b.candidate.all_slopes_integral,
                index_exponent: b.index_exponent,
                factors: b.report.factors.iter().map(FactorDoc::from).collect(),
                elements: b
                    .candidate
                    .elements
                    .iter()
                    .map(|e| ElementDoc {
                        numerator: coeffs(&e.numerator),
                        denominator: dec(&num_traits::pow(b.modulus.clone(), e.exponent as usize)),
                    })
                    .collect(),
                module: ModuleDoc::from(&b.module),
            })
            .collect();
        OutputDocument {
            f: coeffs(self.f.poly()),
            mode: match self.mode {
                Mode::FromDiscriminant => "disc",
                Mode::Explicit(_) => "N",
            },
            modulus: dec(&self.modulus),
            discriminant: self.discriminant.as_ref().map(dec),
            small_primes: self.small_primes.clone(),
            coprime_base: parts_doc(&self.coprime_base),
            moduli_log: self.sorted_events().iter().map(EventDoc::from).collect(),
            bases,
            patched: self.patched.as_ref().map(ModuleDoc::from),
            status: self.status.as_str(),
            obstruction: self.obstruction.as_ref().map(ObstructionDoc::from),
            unfactored: self.unfactored.iter().map(dec).collect(),
        }
    }
}
