//! Report values produced by the CLI and their plain-text rendering.

use std::fmt::Write;

use serde::Serialize;

use lpdiv_core::curves::{CurveModel, CurveSpec};
use lpdiv_core::decomp::{
    CounterexampleReport, DivisibilityReport, DkReport, GsumTable, QuotientStructure, SplitOutcome,
    SCHEMA,
};
use lpdiv_core::zeta::{p_rank_manin, validate_lpoly, LPolynomial, Validation};

pub trait Render {
    fn table(&self) -> String;
}

fn row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    writeln!(out, "{key:<28} {value}").unwrap();
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
pub struct CountReport {
    pub schema: u32,
    pub curve: CurveSpec,
    pub q: u64,
    pub genus: usize,
    /// `(m, N_m)`, with counts as decimal strings.
    pub counts: Vec<(u32, String)>,
}

impl CountReport {
    pub fn new(curve: CurveSpec, model: &CurveModel, counts: Vec<(u32, u64)>) -> Self {
        CountReport {
            schema: SCHEMA,
            curve,
            q: model.base_field_size(),
            genus: model.genus(),
            counts: counts
                .into_iter()
                .map(|(m, n)| (m, n.to_string()))
                .collect(),
        }
    }
}

impl Render for CountReport {
    fn table(&self) -> String {
        let mut out = String::new();
        if let Some(name) = self.curve.name() {
            row(&mut out, "curve", name);
        }
        row(&mut out, "q", self.q);
        row(&mut out, "genus", self.genus);
        for (m, n) in &self.counts {
            row(&mut out, &format!("N_{m}"), n);
        }
        out.trim_end().to_string()
    }
}

#[derive(Serialize)]
pub struct LpolyReport {
    pub schema: u32,
    pub curve: CurveSpec,
    pub horizon: usize,
    pub lpoly: LPolynomial,
    pub lpoly_str: String,
    pub validation: Validation,
    pub p_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_rank_deuring: Option<usize>,
}

impl LpolyReport {
    pub fn new(curve: CurveSpec, model: &CurveModel, lpoly: LPolynomial, horizon: usize) -> Self {
        LpolyReport {
            schema: SCHEMA,
            curve,
            horizon,
            lpoly_str: lpoly.poly.compact(),
            validation: validate_lpoly(&lpoly, true),
            p_rank: p_rank_manin(&lpoly, model.characteristic() as u64),
            two_rank_deuring: model.two_rank_deuring(),
            lpoly,
        }
    }
}

impl Render for LpolyReport {
    fn table(&self) -> String {
        let mut out = String::new();
        if let Some(name) = self.curve.name() {
            row(&mut out, "curve", name);
        }
        row(&mut out, "q", self.lpoly.q);
        row(&mut out, "genus", self.lpoly.g);
        row(&mut out, "counts used", format!("m = 1..{}", self.horizon));
        row(&mut out, "L(t)", &self.lpoly);
        row(&mut out, "valid", validation_text(&self.validation));
        row(&mut out, "p-rank (L mod p)", self.p_rank);
        if let Some(r) = self.two_rank_deuring {
            row(&mut out, "2-rank (pole count)", r);
        }
        out.trim_end().to_string()
    }
}

fn validation_text(v: &Validation) -> String {
    if v.ok {
        "yes".into()
    } else {
        format!("no: {}", v.failures.join("; "))
    }
}

#[derive(Serialize)]
pub struct GsumReport {
    pub schema: u32,
    pub k: u32,
    pub m: u32,
    pub value: i64,
}

impl GsumReport {
    pub fn new(k: u32, m: u32, value: i64) -> Self {
        GsumReport {
            schema: SCHEMA,
            k,
            m,
            value,
        }
    }
}

impl Render for GsumReport {
    fn table(&self) -> String {
        format!("G_{}^({}) = {}", self.m, self.k, self.value)
    }
}

impl Render for DivisibilityReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let h = &self.hyp1;
        row(&mut out, "q", self.q);
        row(&mut out, "k", self.k);
        row(&mut out, "L_C", self.lc.poly.pretty());
        row(&mut out, "L_D", self.ld.poly.pretty());
        row(
            &mut out,
            "equal counts, k !| m",
            format!("{} for m <= {}", yes(h.holds_to_horizon), h.horizon),
        );
        row(
            &mut out,
            "equal counts, all k !| m",
            format!(
                "{} (exact, power sums to m = {})",
                yes(h.holds_for_all_m),
                h.exact_bound
            ),
        );
        if let Some(m) = h.first_failure {
            row(&mut out, "first differing m", m);
        }
        row(&mut out, "L_C^(k) squarefree", yes(self.hyp2_squarefree));
        row(&mut out, "L_C divides L_D", yes(self.divides));
        row(
            &mut out,
            "quotient",
            self.quotient.as_deref().unwrap_or("-"),
        );
        row(
            &mut out,
            "quotient in Z[t^k]",
            match &self.quotient_compressed {
                Some(h) => format!("yes, Q(t^k) with Q = {h}"),
                None => "no".into(),
            },
        );
        row(&mut out, "verdict", format!("{:?}", self.verdict));
        out.trim_end().to_string()
    }
}

fn structure_text(s: &QuotientStructure) -> String {
    match s {
        QuotientStructure::Unit { is_one } => format!("k = 1, quotient is 1: {}", yes(*is_one)),
        QuotientStructure::PrimePower {
            p,
            in_support,
            compressed,
        } => match compressed {
            Some(c) if *in_support => format!("in Z[t^{p}], Q(t^{p}) with Q = {c}"),
            _ => format!("not in Z[t^{p}]"),
        },
        QuotientStructure::TwoPrime { p1, p2, split } => match split {
            SplitOutcome::Split { a, b } => format!(
                "A(t^{p1}) B(t^{p2}) with A = {}, B = {}",
                a.compact(),
                b.compact()
            ),
            SplitOutcome::NoSplit { reason } => format!("no split over {p1}, {p2}: {reason}"),
            SplitOutcome::Inconclusive { reason } => format!("inconclusive: {reason}"),
        },
        QuotientStructure::NotAttempted { primes } => {
            format!("not attempted for primes {primes:?}")
        }
    }
}

impl Render for DkReport {
    fn table(&self) -> String {
        let mut out = String::new();
        row(&mut out, "k", self.k);
        row(&mut out, "genus", self.genus);
        row(&mut out, "counts used", format!("m = 1..{}", self.horizon));
        row(&mut out, "L_{D_k}", self.lpoly.poly.pretty());
        row(&mut out, "valid", yes(self.lpoly_valid));
        row(&mut out, "L_{D_1} divides", yes(self.divides_by_d1));
        row(
            &mut out,
            "quotient",
            self.quotient.as_deref().unwrap_or("-"),
        );
        if let Some(s) = &self.structure {
            row(&mut out, "quotient structure", structure_text(s));
        }
        row(&mut out, "2-rank (pole count)", self.two_rank_deuring);
        row(&mut out, "p-rank of L_{D_k}", self.p_rank_lpoly);
        if let Some(r) = self.p_rank_quotient {
            row(&mut out, "p-rank of quotient", r);
        }
        row(
            &mut out,
            "L_{D_1}^(k) squarefree",
            yes(self.d1_extension_squarefree),
        );
        row(
            &mut out,
            "divisibility conjecture",
            if self.divisibility_conjecture {
                "holds"
            } else {
                "fails"
            },
        );
        row(&mut out, "structure conjecture", &self.structure_conjecture);
        out.trim_end().to_string()
    }
}

impl Render for GsumTable {
    fn table(&self) -> String {
        let mut out = String::new();
        let width = self
            .entries
            .iter()
            .map(|e| e.value.to_string().len())
            .max()
            .unwrap_or(1)
            .max(3);
        write!(out, "{:>4}", "k\\m").unwrap();
        for m in 1..=self.m_max {
            write!(out, " {m:>width$}").unwrap();
        }
        out.push('\n');
        for k in 1..=self.k_max {
            write!(out, "{k:>4}").unwrap();
            for m in 1..=self.m_max {
                let v = self.get(k, m).unwrap();
                write!(out, " {v:>width$}").unwrap();
            }
            out.push('\n');
        }
        if self.mismatches.is_empty() {
            out.push_str("all (k,m) consistent: G_m^(k) = G_m^(gcd(k,m))");
        } else {
            write!(out, "mismatches (k,m): {:?}", self.mismatches).unwrap();
        }
        out
    }
}

impl Render for CounterexampleReport {
    fn table(&self) -> String {
        let mut out = String::new();
        row(&mut out, "L_C", self.lc.poly.pretty());
        row(&mut out, "L_D", self.ld.poly.pretty());
        for a in &self.assertions {
            let status = if a.passed { "PASS" } else { "FAIL" };
            if a.detail.is_empty() {
                writeln!(out, "{status} {}", a.name).unwrap();
            } else {
                writeln!(out, "{status} {} ({})", a.name, a.detail).unwrap();
            }
        }
        out.trim_end().to_string()
    }
}
