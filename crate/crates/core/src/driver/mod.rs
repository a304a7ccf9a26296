//! The modulus worklist.
//!
//! Starting from `N`, every pending modulus is run as if it were prime. A divisor
//! hook refines the modulus into a coprime base; a factor hook refines the
//! squarefree decomposition in place. Once every modulus carries a valid basis
//! the local bases are patched into one `N`-integral basis.

mod disc;
mod doc;
mod patch;
mod refine;
mod sqfree;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use rayon::prelude::*;

pub use disc::{discriminant, strip_small_primes};
pub use doc::{BasisDoc, ElementDoc, EventDoc, FactorDoc, ModuleDoc, ObstructionDoc, OutputDocument, PartDoc, SideDoc};
pub use patch::patch_bases;
pub use refine::{coprime_base, coprime_refine, expand, perfect_root};
pub use sqfree::{factor_integer, squarefree_factor_int, FactorBudget, Hints, Unfactored};

use crate::basis::{
    basis_candidate, index_exponent, integrality_check, numerator_determinant, to_module_basis, BasisCandidate,
    ModuleBasis,
};
use crate::error::Error;
use crate::intpoly::IntPolynomial;
use crate::modint::{Hook, ModulusContext};
use crate::modpoly::{gcd0, sfd0, ModPolynomial, SquarefreeDecomposition};
use crate::newton::{regularity_report, NumberFieldInput, Obstruction, RegularityReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `N` is `|disc f|` with the primes `p <= deg f` removed.
    FromDiscriminant,
    /// A caller-supplied `N` whose prime factors all exceed `deg f`.
    Explicit(BigInt),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: Mode,
    pub hints: Hints,
    pub budget: FactorBudget,
    /// Check integrality of every emitted element and of the patched basis.
    pub verify: bool,
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        RunConfig { mode, hints: Hints::default(), budget: FactorBudget::default(), verify: true }
    }

    pub fn with_hints(mut self, hints: Hints) -> Self {
        self.hints = hints;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventKind {
    Divisor,
    FactorOfG,
    Squarefree,
    SquarefreeSplit,
    Based,
    NotRegular,
    Unfactored,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Divisor => "divisor",
            EventKind::FactorOfG => "factor_of_g",
            EventKind::Squarefree => "squarefree",
            EventKind::SquarefreeSplit => "squarefree_split",
            EventKind::Based => "based",
            EventKind::NotRegular => "not_regular",
            EventKind::Unfactored => "unfactored",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Event {
    pub modulus: BigInt,
    pub kind: EventKind,
    pub divisor: Option<BigInt>,
    pub parts: Vec<(BigInt, u32)>,
    /// `(g, b)` for a factor hook `b | g`.
    pub factor: Option<(IntPolynomial, IntPolynomial)>,
}

impl Event {
    fn new(modulus: &BigInt, kind: EventKind) -> Self {
        Event { modulus: modulus.clone(), kind, divisor: None, parts: Vec::new(), factor: None }
    }

    fn sort_key(&self) -> (BigInt, &'static str, String) {
        let detail = format!(
            "{:?}|{:?}|{:?}",
            self.divisor,
            self.parts,
            self.factor.as_ref().map(|(g, b)| (g.to_text(), b.to_text()))
        );
        (self.modulus.clone(), self.kind.as_str(), detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotRegular,
    Unfactored,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotRegular => "not_regular",
            Status::Unfactored => "unfactored",
        }
    }
}

/// A modulus that reached a valid local basis.
#[derive(Clone, Debug)]
pub struct BasedModulus {
    pub modulus: BigInt,
    pub exponent: u32,
    pub squarefree: Option<bool>,
    pub report: RegularityReport,
    pub candidate: BasisCandidate,
    pub module: ModuleBasis,
    pub index_exponent: u64,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub f: NumberFieldInput,
    pub mode: Mode,
    pub discriminant: Option<BigInt>,
    pub small_primes: BTreeMap<u64, u32>,
    /// The initial modulus `N`.
    pub modulus: BigInt,
    pub events: Vec<Event>,
    /// Final coprime base `(m, e)` with `prod m^e = N`, sorted by `m`.
    pub coprime_base: Vec<(BigInt, u32)>,
    pub based: Vec<BasedModulus>,
    pub patched: Option<ModuleBasis>,
    pub status: Status,
    pub obstruction: Option<Obstruction>,
    pub unfactored: Vec<BigInt>,
    pub elapsed: Duration,
}

impl RunReport {
    pub fn base_moduli(&self) -> Vec<BigInt> {
        self.coprime_base.iter().map(|(m, _)| m.clone()).collect()
    }

    pub fn based_at(&self, m: &BigInt) -> Option<&BasedModulus> {
        self.based.iter().find(|b| &b.modulus == m)
    }

    /// Events in canonical order: by modulus, then kind.
    pub fn sorted_events(&self) -> Vec<Event> {
        let mut ev = self.events.clone();
        ev.sort_by_cached_key(Event::sort_key);
        ev
    }
}

#[derive(Debug)]
enum EntryState {
    Pending,
    Based(Box<BasedModulus>),
    NotRegular,
    Unfactored,
}

#[derive(Debug)]
struct Entry {
    modulus: BigInt,
    exponent: u32,
    squarefree: Option<bool>,
    state: EntryState,
}

enum Outcome {
    Divisor(BigInt),
    Split(Vec<(BigInt, u32)>),
    Based(Box<BasedModulus>),
    NotRegular(Box<Obstruction>),
    Unfactored(BigInt),
}

/// Replaces the factor of `dec` divisible by `b` with `b` and its cofactor.
fn split_decomposition(dec: &mut SquarefreeDecomposition, b: &ModPolynomial) -> Result<Result<(), BigInt>, Error> {
    let idx = dec
        .pairs
        .iter()
        .position(|(g, _)| g.degree() > b.degree() && g.div_rem_monic(b).1.is_zero())
        .ok_or_else(|| Error::Inconsistency(format!("factor hook {b:?} divides no factor")))?;
    let (g, l) = dec.pairs.remove(idx);
    let c = g.div_rem_monic(b).0;
    match gcd0(b, &c) {
        Ok(d) if d.is_one() => {}
        Ok(d) => return Err(Error::Inconsistency(format!("split of {g:?} by {b:?} has common factor {d:?}"))),
        Err(Hook::DivisorOfN(d)) => return Ok(Err(d)),
        Err(Hook::FactorOfG(_)) => unreachable!("gcd0 raises no factor hooks"),
    }
    dec.pairs.insert(idx, (c, l));
    dec.pairs.insert(idx, (b.clone(), l));
    Ok(Ok(()))
}

fn process(
    f: &NumberFieldInput,
    m: &BigInt,
    exponent: u32,
    squarefree: Option<bool>,
    cfg: &RunConfig,
) -> Result<(Vec<Event>, Outcome), Error> {
    let n = f.degree();
    let ctx = ModulusContext::with_degree_bound(m.clone(), n)?;
    let mut events = Vec::new();
    let mut dec = match sfd0(&f.poly().reduce(&ctx)) {
        Ok(d) => d,
        Err(Hook::DivisorOfN(d)) => return Ok((events, Outcome::Divisor(d))),
        Err(Hook::FactorOfG(_)) => unreachable!("sfd0 raises no factor hooks"),
    };
    let report = loop {
        match regularity_report(f, &ctx, &dec)? {
            Ok(r) => break r,
            Err(Hook::DivisorOfN(d)) => return Ok((events, Outcome::Divisor(d))),
            Err(Hook::FactorOfG(b)) => {
                let g = dec
                    .pairs
                    .iter()
                    .find(|(g, _)| g.degree() > b.degree() && g.div_rem_monic(&b).1.is_zero())
                    .map(|(g, _)| IntPolynomial::lift(g));
                let mut ev = Event::new(m, EventKind::FactorOfG);
                ev.factor = g.map(|g| (g, IntPolynomial::lift(&b)));
                events.push(ev);
                if let Err(d) = split_decomposition(&mut dec, &b)? {
                    return Ok((events, Outcome::Divisor(d)));
                }
            }
        }
    };
    if !report.regular {
        let obs = report.obstruction.clone().expect("non-regular report names its obstruction");
        return Ok((events, Outcome::NotRegular(Box::new(obs))));
    }
    let mut squarefree = squarefree;
    let mut candidate = basis_candidate(&report, squarefree)?;
    if !candidate.is_valid() {
        match squarefree_factor_int(m, &cfg.hints, &cfg.budget) {
            Ok(parts) if parts.len() == 1 && parts[0].1 == 1 => {
                squarefree = Some(true);
                candidate.modulus_squarefree = Some(true);
                events.push(Event::new(m, EventKind::Squarefree));
            }
            Ok(parts) => return Ok((events, Outcome::Split(parts))),
            Err(Unfactored(c)) => return Ok((events, Outcome::Unfactored(c))),
        }
    }
    let det = numerator_determinant(&candidate, f);
    if !det.gcd(m).is_one() {
        return Err(Error::Inconsistency(format!("numerator determinant {det} shares a factor with {m}")));
    }
    if cfg.verify {
        for e in &candidate.elements {
            let d = Pow::pow(m, e.exponent);
            if !integrality_check(&e.numerator, &d, f) {
                return Err(Error::Inconsistency(format!(
                    "element {} / {m}^{} is not integral",
                    e.numerator.to_text(),
                    e.exponent
                )));
            }
        }
    }
    let module = to_module_basis(&candidate, f);
    let based = BasedModulus {
        modulus: m.clone(),
        exponent,
        squarefree,
        index_exponent: index_exponent(&report),
        report,
        candidate,
        module,
    };
    Ok((events, Outcome::Based(Box::new(based))))
}

fn check_worklist(entries: &[Entry], n: &BigInt) -> Result<(), Error> {
    let parts: Vec<(BigInt, u32)> = entries.iter().map(|e| (e.modulus.clone(), e.exponent)).collect();
    if &expand(&parts) != n {
        return Err(Error::Inconsistency("worklist no longer multiplies to N".into()));
    }
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if !entries[i].modulus.gcd(&entries[j].modulus).is_one() {
                return Err(Error::Inconsistency(format!(
                    "worklist moduli {} and {} are not coprime",
                    entries[i].modulus, entries[j].modulus
                )));
            }
        }
    }
    Ok(())
}

fn has_small_prime(n: &BigInt, bound: usize) -> Option<u64> {
    (2..=bound as u64)
        .filter(|&p| num_prime::nt_funcs::is_prime64(p))
        .find(|&p| n.is_multiple_of(&BigInt::from(p)))
}

/// Computes an `N`-integral basis of `Q[x]/(f)`.
pub fn run(f: &NumberFieldInput, cfg: &RunConfig) -> Result<RunReport, Error> {
    let start = Instant::now();
    let n = f.degree();
    let (disc, small, modulus) = match &cfg.mode {
        Mode::FromDiscriminant => {
            let d = discriminant(f.poly());
            if d == BigInt::from(0) {
                return Err(Error::InvalidInput("f has a repeated factor (zero discriminant)".into()));
            }
            let (small, rest) = strip_small_primes(&d, n);
            (Some(d), small, rest)
        }
        Mode::Explicit(m) => {
            if m < &BigInt::from(2) {
                return Err(Error::InvalidInput(format!("modulus must be at least 2, got {m}")));
            }
            if let Some(p) = has_small_prime(m, n) {
                return Err(Error::InvalidInput(format!("modulus {m} is divisible by the prime {p} <= deg f = {n}")));
            }
            (None, BTreeMap::new(), m.clone())
        }
    };
    log::info!("N has {} bits", modulus.bits());

    let mut entries: Vec<Entry> = Vec::new();
    if !modulus.is_one() {
        entries.push(Entry { modulus: modulus.clone(), exponent: 1, squarefree: None, state: EntryState::Pending });
    }
    let mut events = Vec::new();
    let mut obstruction = None;
    let mut unfactored = Vec::new();

    loop {
        let pending: Vec<usize> =
            (0..entries.len()).filter(|&i| matches!(entries[i].state, EntryState::Pending)).collect();
        if pending.is_empty() || obstruction.is_some() {
            break;
        }
        let outcomes: Vec<Result<(Vec<Event>, Outcome), Error>> = pending
            .par_iter()
            .map(|&i| {
                let e = &entries[i];
                process(f, &e.modulus, e.exponent, e.squarefree, cfg)
            })
            .collect();
        let mut next: Vec<Entry> = Vec::new();
        let mut outcomes = pending.iter().copied().zip(outcomes).collect::<BTreeMap<_, _>>();
        for (i, entry) in entries.into_iter().enumerate() {
            let Some(res) = outcomes.remove(&i) else {
                next.push(entry);
                continue;
            };
            let (evs, outcome) = res?;
            events.extend(evs);
            let m = entry.modulus.clone();
            match outcome {
                Outcome::Divisor(d) => {
                    log::debug!("modulus {m}: divisor {d}");
                    let parts = coprime_refine(std::slice::from_ref(&m), &d);
                    let child = if entry.squarefree == Some(true) { Some(true) } else { None };
                    for (b, k) in &parts {
                        next.push(Entry {
                            modulus: b.clone(),
                            exponent: entry.exponent * k,
                            squarefree: child,
                            state: EntryState::Pending,
                        });
                    }
                    let mut ev = Event::new(&m, EventKind::Divisor);
                    ev.divisor = Some(d);
                    ev.parts = parts;
                    events.push(ev);
                }
                Outcome::Split(parts) => {
                    log::debug!("modulus {m}: squarefree split {parts:?}");
                    for (s, j) in &parts {
                        next.push(Entry {
                            modulus: s.clone(),
                            exponent: entry.exponent * j,
                            squarefree: Some(true),
                            state: EntryState::Pending,
                        });
                    }
                    let mut ev = Event::new(&m, EventKind::SquarefreeSplit);
                    ev.parts = parts;
                    events.push(ev);
                }
                Outcome::Based(b) => {
                    events.push(Event::new(&m, EventKind::Based));
                    next.push(Entry { state: EntryState::Based(b), ..entry });
                }
                Outcome::NotRegular(obs) => {
                    log::warn!("modulus {m} is not regular");
                    events.push(Event::new(&m, EventKind::NotRegular));
                    if obstruction.is_none() {
                        obstruction = Some(*obs);
                    }
                    next.push(Entry { state: EntryState::NotRegular, ..entry });
                }
                Outcome::Unfactored(c) => {
                    log::warn!("modulus {m}: could not factor {c}");
                    let mut ev = Event::new(&m, EventKind::Unfactored);
                    ev.divisor = Some(c.clone());
                    events.push(ev);
                    unfactored.push(c);
                    next.push(Entry { state: EntryState::Unfactored, ..entry });
                }
            }
        }
        next.sort_by(|a, b| a.modulus.cmp(&b.modulus));
        entries = next;
        check_worklist(&entries, &modulus)?;
    }

    let status = if obstruction.is_some() {
        Status::NotRegular
    } else if !unfactored.is_empty() {
        Status::Unfactored
    } else {
        Status::Ok
    };
    let coprime_base = entries.iter().map(|e| (e.modulus.clone(), e.exponent)).collect();
    let based: Vec<BasedModulus> = entries
        .into_iter()
        .filter_map(|e| match e.state {
            EntryState::Based(b) => Some(*b),
            _ => None,
        })
        .collect();
    let patched = if status == Status::Ok {
        let parts: Vec<(BigInt, ModuleBasis)> = based.iter().map(|b| (b.modulus.clone(), b.module.clone())).collect();
        let p = patch_bases(&parts, n)?;
        if cfg.verify {
            for row in p.elements() {
                if !integrality_check(&row, &p.denominator, f) {
                    return Err(Error::Inconsistency(format!("patched element {} is not integral", row.to_text())));
                }
            }
        }
        Some(p)
    } else {
        None
    };
    unfactored.sort();
    Ok(RunReport {
        f: f.clone(),
        mode: cfg.mode.clone(),
        discriminant: disc,
        small_primes: small,
        modulus,
        events,
        coprime_base,
        based,
        patched,
        status,
        obstruction,
        unfactored,
        elapsed: start.elapsed(),
    })
}
