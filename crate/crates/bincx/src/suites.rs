//! Named verification suites: each trial generates instances from its seed
//! and checks the torsion identities exactly.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use bincx_core::constructions::*;
use bincx_core::randgen::{GenConfig, Generator};
use bincx_core::{binary_torsion, chain_torsion_with, eval_torsion, BinaryComplex, BinaryLadder, FieldDesc, Matrix, RelationExpr, TorsionValue};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Switching,
    Shift,
    Ladder,
    Shortening,
    Truncation,
    InversePair,
    Ses,
    Nenashev,
    RemarkDecomposition,
    TauK0,
    WellDefinedness,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Switching,
        Suite::Shift,
        Suite::Ladder,
        Suite::Shortening,
        Suite::Truncation,
        Suite::InversePair,
        Suite::Ses,
        Suite::Nenashev,
        Suite::RemarkDecomposition,
        Suite::TauK0,
        Suite::WellDefinedness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Switching => "switching",
            Suite::Shift => "shift",
            Suite::Ladder => "ladder",
            Suite::Shortening => "shortening",
            Suite::Truncation => "truncation",
            Suite::InversePair => "inverse_pair",
            Suite::Ses => "ses",
            Suite::Nenashev => "nenashev",
            Suite::RemarkDecomposition => "remark_decomposition",
            Suite::TauK0 => "tau_k0",
            Suite::WellDefinedness => "well_definedness",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single suite or `all`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    One(Suite),
    All,
}

impl Selection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            Selection::One(s) => vec![s],
            Selection::All => Suite::ALL.to_vec(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Selection::One(s) => s.name(),
            Selection::All => "all",
        }
    }
}

impl FromStr for Selection {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(Selection::All);
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|&x| Selection::One(x))
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub field: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub elapsed_secs: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks recorded by one trial.
#[derive(Default)]
struct Trial {
    checks: usize,
    failures: Vec<(String, String, String)>,
}

impl Trial {
    fn eq(&mut self, identity: &str, lhs: &TorsionValue, rhs: &TorsionValue) {
        self.checks += 1;
        if lhs != rhs {
            self.failures.push((identity.into(), lhs.to_string(), rhs.to_string()));
        }
    }

    fn holds(&mut self, identity: &str, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push((identity.into(), "false".into(), "true".into()));
        }
    }

    fn error(&mut self, identity: &str, e: impl fmt::Display) {
        self.checks += 1;
        self.failures.push((identity.into(), format!("error: {e}"), "ok".into()));
    }
}

fn t(p: &BinaryComplex) -> TorsionValue {
    binary_torsion(p)
}

fn sign(f: FieldDesc, n: usize) -> TorsionValue {
    TorsionValue::new(f.from_i64(if n % 2 == 0 { 1 } else { -1 })).expect("±1")
}

/// `Π_i t(⟨σ_i|τ_i⟩)^{(-1)^i}`.
pub fn ladder_product(l: &BinaryLadder) -> TorsionValue {
    let f = l.source.field();
    l.sigma.iter().zip(&l.tau).enumerate().fold(TorsionValue::one(f), |acc, (i, (s, tau))| {
        let g = t(&BinaryComplex::two_term(s, tau).expect("ladder maps are invertible"));
        acc * g.pow(if i % 2 == 0 { 1 } else { -1 })
    })
}

/// Generator settings per field: `Q` gets smaller instances.
fn config(f: FieldDesc, seed: u64) -> GenConfig {
    let cfg = GenConfig::new(seed, f);
    match f {
        FieldDesc::Rationals => cfg.with_max_rank(2).with_entry_bound(3),
        FieldDesc::Prime(_) => cfg.with_max_rank(2),
    }
}

macro_rules! attempt {
    ($trial:expr, $name:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $trial.error($name, err);
                return;
            }
        }
    };
}

fn run_trial(suite: Suite, f: FieldDesc, seed: u64, tr: &mut Trial) {
    let base = config(f, seed);
    match suite {
        Suite::Switching => {
            let mut g = Generator::new(base.with_length(1 + (seed % 5) as usize));
            let p = g.gen_binary();
            tr.eq("t(sw(p)) = t(p)^-1", &t(&p.swap_top_bottom()), &t(&p).inv());
            let d = attempt!(tr, "diagonal_of", BinaryComplex::diagonal_of(p.top()));
            tr.holds("t(diagonal) = 1", t(&d).is_one());
            let n = g.range(1, 6);
            let (a, b) = (g.random_invertible(n), g.random_invertible(n));
            let gen = attempt!(tr, "two_term", BinaryComplex::two_term(&a, &b));
            let det = |m: &Matrix| TorsionValue::new(m.det().expect("square")).expect("invertible");
            tr.eq("t(<a|b>) = det a / det b", &t(&gen), &(det(&a) * det(&b).inv()));
        }
        Suite::Shift => {
            let mut g = Generator::new(base.with_length(1 + (seed % 5) as usize));
            let p = g.gen_binary();
            let q = g.gen_binary();
            tr.eq("t(p[1]) = t(p)^-1", &t(&p.shift(1)), &t(&p).inv());
            tr.eq("t(p[2]) = t(p)", &t(&p.shift(2)), &t(&p));
            let sum = attempt!(tr, "direct_sum", p.direct_sum(&q));
            tr.eq("t(p + q) = t(p) t(q)", &t(&sum), &(t(&p) * t(&q)));
        }
        Suite::Ladder => {
            let mut g = Generator::new(base.with_length(2 + (seed % 4) as usize));
            let l = g.gen_ladder();
            let prod = ladder_product(&l);
            tr.eq("t(Q) t(P)^-1 = prod t(<s_i|t_i>)^(-1)^i", &(t(&l.target) * t(&l.source).inv()), &prod);
            let total = attempt!(tr, "ladder_total", ladder_total(&l));
            tr.eq("t(total) = prod t(<s_i|t_i>)^(-1)^i", &t(&total), &prod);
            let id = g.gen_identity_ladder();
            tr.holds("identity ladder: Q = P", id.source == id.target);
        }
        Suite::Shortening => {
            let k = 2 + (seed % 3) as usize;
            let mut g = Generator::new(base.with_length(k + 1));
            let p = g.gen_binary();
            let s = attempt!(tr, "grayson_shorten", grayson_shorten(&p));
            let tau = attempt!(tr, "tau_of", tau_of(&p));
            tr.holds("short(p) is supported on [0,k]", s.top_degree() == k);
            tr.holds("t(p) t(short p) t(tau_p) = 1", (t(&p) * t(&s) * t(&tau)).is_one());
            let l = Generator::new(base.with_length(2 + (seed % 3) as usize)).gen_ladder();
            let sl = attempt!(tr, "shorten_ladder", shorten_ladder(&l));
            tr.holds("short(ladder) validates", sl.is_valid());
            tr.holds("short(ladder) is involutive", sl.is_involutive());
            tr.eq("ladder product of short(ladder) is inverted", &ladder_product(&sl), &ladder_product(&l).inv());
        }
        Suite::Truncation => {
            let mut g = Generator::new(base.with_length(2 + (seed % 3) as usize));
            let p = g.gen_binary();
            let s = attempt!(tr, "grayson_shorten", grayson_shorten(&p));
            let ge1 = attempt!(tr, "truncate_ge1", truncate_ge1(&p));
            let le2 = attempt!(tr, "truncate_le2", truncate_le2(&p));
            let tau = attempt!(tr, "tau_of", tau_of(&p));
            tr.eq(
                "t(short p) = t(t>=1 p) t(t<=2 p)^-1 t(tau_p)^-1",
                &t(&s),
                &(t(&ge1) * t(&le2).inv() * t(&tau).inv()),
            );
            let d = attempt!(tr, "diagonal_of", BinaryComplex::diagonal_of(p.top()));
            let (ge1, le2) = (attempt!(tr, "truncate_ge1", truncate_ge1(&d)), attempt!(tr, "truncate_le2", truncate_le2(&d)));
            tr.holds("diagonal: t(t>=1 p) = 1", t(&ge1).is_one());
            tr.holds("diagonal: t(t<=2 p) = 1", t(&le2).is_one());
            let mut ranks = g.ranks(p.top_degree());
            ranks[0] = 0;
            let z = g.gen_binary_with_ranks(&ranks);
            let le2 = attempt!(tr, "truncate_le2", truncate_le2(&z));
            tr.holds("P_0 = 0: t(t<=2 p) = 1", t(&le2).is_one());
        }
        Suite::InversePair => {
            let k = 2 + (seed % 3) as usize;
            let mut g = Generator::new(base.with_length(k));
            let p = g.gen_binary();
            let ik = include_ik(&p);
            let e = attempt!(tr, "shorten_pk", shorten_pk(&ik));
            let v = attempt!(tr, "eval", eval_torsion(f, &e));
            tr.eq("t(p_k(i_k p)) = t(p)", &v, &t(&p));
            let q = Generator::new(base.with_length(k + 1)).gen_binary();
            let e = attempt!(tr, "shorten_pk", shorten_pk(&q));
            let v = attempt!(tr, "eval", eval_torsion(f, &e));
            tr.eq("t(p_k(p)) = t(p)", &v, &t(&q));
            let expr = RelationExpr::new().with(1, p.clone()).with(-1, p.clone());
            tr.holds("t(p - p) = 1", attempt!(tr, "eval", eval_torsion(f, &expr)).is_one());
        }
        Suite::Ses => {
            let mut g = Generator::new(base.with_length(2 + (seed % 3) as usize));
            let s = g.gen_ses(seed % 4 == 0);
            tr.eq("t(total) = t(sub) t(quot)", &t(&s.total), &(t(&s.sub) * t(&s.quot)));
            let o = attempt!(tr, "ses_shorten", ses_shorten(&s));
            tr.holds("shortened SES validates", o.is_valid());
            tr.eq("t(short total) = t(short sub) t(short quot)", &t(&o.total), &(t(&o.sub) * t(&o.quot)));
        }
        Suite::Nenashev => {
            let d = Generator::new(base).gen_nenashev();
            tr.holds("diagram validates", d.validate().is_ok());
            let cols: Vec<BinaryComplex> = attempt!(tr, "column", (0..3).map(|i| d.column(i)).collect::<Result<_, _>>());
            let rows = t(&d.p) * t(&d.n).inv() * t(&d.m);
            tr.eq("t(P) t(N)^-1 t(M) = t(C0) t(C1)^-1 t(C2)", &rows, &(t(&cols[0]) * t(&cols[1]).inv() * t(&cols[2])));
            let total = attempt!(tr, "nenashev_total", nenashev_total(&d));
            tr.eq("t(T) = t(P) t(N)^-1 t(M)", &t(&total), &rows);
        }
        Suite::RemarkDecomposition => {
            let d = Generator::new(base).gen_nenashev();
            let r = attempt!(tr, "remark_objects", remark_objects(&d));
            tr.eq("t(T') = t(T_b P) t(T_bf sw N) t(T_f M)", &t(&r.t_prime), &(t(&r.t_b) * t(&r.t_bf) * t(&r.t_f)));
            tr.eq("t(T_b P) = t(P) t(tau_P2)", &t(&r.t_b), &(t(&d.p) * sign(f, d.p.dim(2))));
            tr.eq("t(T_f M) = t(M) t(tau_M0)", &t(&r.t_f), &(t(&d.m) * sign(f, d.m.dim(0))));
            tr.eq(
                "t(T_bf sw N) = t(N)^-1 t(tau_N0) t(tau_N2)",
                &t(&r.t_bf),
                &(t(&d.n).inv() * sign(f, d.n.dim(0)) * sign(f, d.n.dim(2))),
            );
            let tau = |n: usize| t(&BinaryComplex::tau_swap(f, n));
            tr.eq("t(tau_N0) t(tau_N2) = t(tau_N1)", &(tau(d.n.dim(0)) * tau(d.n.dim(2))), &tau(d.n.dim(1)));
            tr.eq("t(tau_N1) = t(tau_P1) t(tau_M1)", &tau(d.n.dim(1)), &(tau(d.p.dim(1)) * tau(d.m.dim(1))));
        }
        Suite::TauK0 => {
            let n = (seed % 9) as usize;
            let id = Matrix::identity(f, n);
            let neg = id.scale(&f.from_i64(-1));
            let pair = attempt!(tr, "two_term", BinaryComplex::two_term(&id, &neg));
            tr.eq("t(tau_swap n) = (-1)^n", &t(&BinaryComplex::tau_swap(f, n)), &sign(f, n));
            tr.eq("t(<id|-id>) = (-1)^n", &t(&pair), &sign(f, n));
        }
        Suite::WellDefinedness => {
            let mut g = Generator::new(base.with_length(1 + (seed % 4) as usize));
            let c = g.gen_acyclic();
            let fact = attempt!(tr, "factorize", c.factorize());
            let reference = attempt!(tr, "chain_torsion", chain_torsion_with(&c, &fact));
            for _ in 0..50 {
                let other = g.rechoose_factorization(&c, &fact);
                let v = attempt!(tr, "chain_torsion_with", chain_torsion_with(&c, &other));
                tr.eq("torsion is independent of the factorisation", &v, &reference);
            }
        }
    }
}

/// Runs `trials` trials with seeds `seed, seed+1, ...`, in parallel, and
/// reports failures in seed order.
pub fn run_suite(selection: Selection, field: FieldDesc, trials: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let suites = selection.suites();
    let jobs: Vec<(Suite, u64)> = suites
        .iter()
        .flat_map(|&s| (0..trials as u64).map(move |i| (s, seed.wrapping_add(i))))
        .collect();
    let results: Vec<(Suite, u64, Trial)> = jobs
        .par_iter()
        .map(|&(s, trial_seed)| {
            let mut tr = Trial::default();
            run_trial(s, field, trial_seed, &mut tr);
            (s, trial_seed, tr)
        })
        .collect();
    let mut checks = 0;
    let mut failures = Vec::new();
    for (s, trial_seed, tr) in results {
        checks += tr.checks;
        for (identity, lhs, rhs) in tr.failures {
            let identity = match selection {
                Selection::All => format!("{s}: {identity}"),
                Selection::One(_) => identity,
            };
            failures.push(Failure { seed: trial_seed, identity, lhs, rhs });
        }
    }
    SuiteReport {
        suite: selection.name().into(),
        field: field.to_string(),
        seed,
        trials,
        checks,
        failures,
        elapsed_secs: start.elapsed().as_secs_f64(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_parsing() {
        assert_eq!("all".parse::<Selection>().unwrap(), Selection::All);
        assert_eq!("tau_k0".parse::<Selection>().unwrap(), Selection::One(Suite::TauK0));
        assert!("bogus".parse::<Selection>().is_err());
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Selection>().unwrap(), Selection::One(s));
        }
    }

    #[test]
    fn every_suite_passes_briefly() {
        for f in [FieldDesc::Rationals, FieldDesc::Prime(101)] {
            let r = run_suite(Selection::All, f, 4, 11);
            assert!(r.passed(), "{:?}", r.failures);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(Selection::One(Suite::Ladder), FieldDesc::Prime(101), 6, 3);
        let b = run_suite(Selection::One(Suite::Ladder), FieldDesc::Prime(101), 6, 3);
        assert_eq!(a.checks, b.checks);
        assert_eq!(a.failures, b.failures);
    }
}
