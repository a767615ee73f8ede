//! Commands behind the `mcg` binary, their JSON documents and table output.
//!
//! Commands return an [`Outcome`] rather than printing, so the binary and the
//! integration tests share one code path. Errors from these functions are
//! input errors (exit code 2); property failures are reported through
//! [`Outcome::exit`].

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::jacobi::{arf_one_rank_one, JacobiElement, SplitVerdict};
use crate::mcg::{pontryagin_coefficient, splitting_theorem_verdict_with_modulus};
use crate::quadratic::{expected_orbit_sizes, orbit_decomposition, QuadraticRefinement, ORBIT_REPORT_LIMIT};
use crate::symplectic::{Covector, IntMatrix, Modulus, Rank, SymplecticMatrix};
use crate::verify::{self, VerifyConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest rank accepted by `split`.
pub const SPLIT_RANK_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    #[default]
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    PropertyFailure = 1,
    InputError = 2,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    /// Extra message for stderr, set on property failures.
    pub stderr: Option<String>,
    pub exit: Exit,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: None, exit: Exit::Success }
    }

    fn judged(stdout: String, passed: bool, failure: &str) -> Self {
        if passed {
            Self::ok(stdout)
        } else {
            Outcome { stdout, stderr: Some(failure.to_string()), exit: Exit::PropertyFailure }
        }
    }
}

/// An integer that serializes as a JSON number when it fits in `i64` and as a
/// decimal string otherwise. Both forms are accepted on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocInt(pub BigInt);

impl Serialize for DocInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => serializer.serialize_i64(v),
            Err(_) => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for DocInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = DocInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<DocInt, E> {
                Ok(DocInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<DocInt, E> {
                Ok(DocInt(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<DocInt, E> {
                let digits = v.strip_prefix('-').unwrap_or(v);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::invalid_value(de::Unexpected::Str(v), &self));
                }
                v.parse::<BigInt>().map(DocInt).map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        deserializer.deserialize_any(IntVisitor)
    }
}

/// Serialized form of a [`JacobiElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDocument {
    pub r: usize,
    /// 0 stands for the integers.
    pub modulus: u64,
    pub x: Vec<DocInt>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<DocInt>>,
}

impl ElementDocument {
    pub fn from_element(g: &JacobiElement) -> Self {
        let a = g.matrix().as_int_matrix().row_vecs().into_iter().map(|row| row.into_iter().map(DocInt).collect()).collect();
        ElementDocument { r: g.rank().get(), modulus: g.modulus().get(), x: g.covector().coords().iter().cloned().map(DocInt).collect(), a }
    }

    /// Validates shape, symplecticity and the coordinate range.
    pub fn to_element(&self) -> Result<JacobiElement> {
        let rank = Rank::new(self.r)?;
        let dim = rank.dim();
        let modulus = Modulus::new(self.modulus);
        if self.x.len() != dim {
            return Err(Error::Parse(format!("x has {} entries, expected {}", self.x.len(), dim)));
        }
        if self.a.len() != dim || self.a.iter().any(|row| row.len() != dim) {
            return Err(Error::Parse(format!("A must be {dim}x{dim}")));
        }
        if !modulus.is_integral() {
            let m = BigInt::from(modulus.get());
            if let Some(i) = self.x.iter().position(|v| v.0.sign() == num_bigint::Sign::Minus || v.0 >= m) {
                return Err(Error::Parse(format!("x[{i}] is outside [0, {})", modulus.get())));
            }
        }
        let rows = self.a.iter().map(|row| row.iter().map(|v| v.0.clone()).collect()).collect();
        let a = SymplecticMatrix::try_new(IntMatrix::from_rows(rows)?)?;
        let x = Covector::new(self.x.iter().map(|v| v.0.clone()).collect(), modulus)?;
        JacobiElement::new(x, a)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

/// Envelope shared by every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub version: String,
    pub parameters: Value,
    pub results: Value,
    pub seed: Option<u64>,
}

impl ReportDocument {
    fn new(command: &str, parameters: Value, results: Value, seed: Option<u64>) -> Self {
        ReportDocument { command: command.to_string(), version: VERSION.to_string(), parameters, results, seed }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(headers.to_vec());
    line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn header(command: &str, params: &str) -> String {
    format!("mcg {VERSION} {command} {params}\n\n")
}

fn bits_of_covector(x: &Covector) -> String {
    x.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn pass_label(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn orbits(r: usize, format: Format) -> Result<Outcome> {
    let rank = Rank::new(r)?;
    rank.ensure_at_most(ORBIT_REPORT_LIMIT)?;
    let report = orbit_decomposition(rank)?;
    let (s0, s1) = expected_orbit_sizes(rank);
    let pass = report.matches_closed_form();
    let out = match format {
        Format::Json => {
            let orbits: Vec<Value> = report
                .orbits
                .iter()
                .map(|o| json!({"arf": o.arf as u8, "size": o.size, "representative": o.representative.to_bit_string(), "arf_constant": o.arf_constant}))
                .collect();
            let results = json!({
                "orbits": orbits,
                "expected": {"arf0": s0, "arf1": s1},
                "total": report.total(),
                "pass": pass,
            });
            ReportDocument::new("orbits", json!({"r": r}), results, None).to_json()
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = report
                .orbits
                .iter()
                .map(|o| {
                    let expected = if o.arf { s1 } else { s0 };
                    vec![(o.arf as u8).to_string(), o.size.to_string(), expected.to_string(), o.representative.to_bit_string()]
                })
                .collect();
            let mut s = header("orbits", &format!("r={r}"));
            s += &table(&["arf", "size", "expected", "representative"], &rows);
            let _ = writeln!(s, "\ntotal {}  closed form: {}", report.total(), pass_label(pass));
            s
        }
    };
    Ok(Outcome::judged(out, pass, "orbit sizes disagree with the closed form"))
}

fn check_split_override(modulus: Option<u64>) -> Result<Option<Modulus>> {
    match modulus {
        Some(m) if m % 4 != 0 => Err(Error::SplitModulus(m)),
        Some(m) => Ok(Some(Modulus::new(m))),
        None => Ok(None),
    }
}

fn section_formula(v: &SplitVerdict) -> Option<String> {
    let section = v.section.as_ref()?;
    if section.lift().is_zero() {
        Some("A -> (0, A)".to_string())
    } else {
        Some(format!("A -> (x.A - x, A), x = ({})", bits_of_covector(section.lift())))
    }
}

fn certificate(v: &SplitVerdict) -> String {
    if v.splits {
        format!("psi + x fixed by every transvection after {} candidates", v.candidates_checked)
    } else {
        format!("{} refinements, none fixed", v.candidates_checked)
    }
}

fn verdict_json(flavor: &str, v: &SplitVerdict) -> Value {
    let witness = v.witness.map(|w| json!({"x": w.x.to_bit_string(), "fixed_refinement": w.fixed.to_bit_string()}));
    let mut obj = json!({
        "flavor": flavor,
        "modulus": v.modulus.get(),
        "base": v.base.to_bit_string(),
        "splits": v.splits,
        "candidates_checked": v.candidates_checked,
        "certificate": certificate(v),
        "witness": witness,
        "section": section_formula(v),
    });
    if let Some(w) = v.witness {
        // Reframing by -x moves the section onto the fixed refinement, where it is (0, A).
        obj["reframed_section"] = json!({"base": w.fixed.to_bit_string(), "formula": "A -> (0, A)"});
    }
    obj
}

pub fn split(p: u32, r: usize, modulus: Option<u64>, format: Format) -> Result<Outcome> {
    let rank = Rank::new(r)?;
    rank.ensure_at_most(SPLIT_RANK_LIMIT)?;
    let override_modulus = check_split_override(modulus)?;
    let verdict = splitting_theorem_verdict_with_modulus(p, rank, override_modulus)?;
    let ok = verdict.consistent();
    let params = json!({"p": p, "r": r, "modulus": modulus});
    let out = match format {
        Format::Json => {
            let results = json!({
                "c": verdict.params.c(),
                "smooth": verdict_json("smooth", &verdict.smooth),
                "homotopy": verdict_json("homotopy", &verdict.homotopy),
                "expected_splits": r == 1,
                "pass": ok,
            });
            ReportDocument::new("split", params, results, None).to_json()
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = [("smooth", &verdict.smooth), ("homotopy", &verdict.homotopy)]
                .iter()
                .map(|(name, v)| {
                    vec![
                        name.to_string(),
                        v.modulus.to_string(),
                        v.base.to_bit_string(),
                        v.splits.to_string(),
                        v.witness.map(|w| w.x.to_bit_string()).unwrap_or_else(|| "-".into()),
                        certificate(v),
                    ]
                })
                .collect();
            let mut s = header("split", &format!("p={p} r={r} c={}", verdict.params.c()));
            s += &table(&["model", "modulus", "base", "splits", "witness", "certificate"], &rows);
            if let Some(f) = section_formula(&verdict.smooth) {
                let _ = writeln!(s, "\nsection over base {}: {f}", verdict.smooth.base.to_bit_string());
            }
            if let Some(w) = verdict.smooth.witness {
                let _ = writeln!(s, "section over base {}: A -> (0, A)", w.fixed.to_bit_string());
            }
            let _ = writeln!(s, "\nsplits iff r = 1: {}", pass_label(ok));
            s
        }
    };
    Ok(Outcome::judged(out, ok, "splitting verdict disagrees with r = 1"))
}

fn parse_psi(bits: Option<&str>, rank: Rank) -> Result<Option<QuadraticRefinement>> {
    let Some(bits) = bits else { return Ok(None) };
    let psi = QuadraticRefinement::from_bit_string(bits)?;
    if psi.rank() != rank {
        return Err(Error::RankMismatch { left: psi.rank().get(), right: rank.get() });
    }
    Ok(Some(psi))
}

fn membership(psi: Option<&QuadraticRefinement>, elements: &[(&str, &JacobiElement)]) -> Result<Vec<String>> {
    let Some(psi) = psi else { return Ok(Vec::new()) };
    let mut outside = Vec::new();
    for (name, g) in elements {
        if !g.is_member(psi)? {
            outside.push(format!("{name} is not in Gamma({psi})"));
        }
    }
    Ok(outside)
}

fn element_outcome(result: &JacobiElement, outside: Vec<String>) -> Outcome {
    let doc = ElementDocument::from_element(result).to_json();
    if outside.is_empty() {
        Outcome::ok(doc)
    } else {
        Outcome { stdout: doc, stderr: Some(outside.join("\n")), exit: Exit::PropertyFailure }
    }
}

/// Product of two element documents; with `psi`, both factors and the
/// product must lie in `Gamma(psi, C)`.
pub fn mul(lhs: &str, rhs: &str, psi: Option<&str>) -> Result<Outcome> {
    let g = ElementDocument::parse(lhs)?.to_element()?;
    let h = ElementDocument::parse(rhs)?.to_element()?;
    let gh = g.mul(&h)?;
    let psi = parse_psi(psi, g.rank())?;
    let outside = membership(psi.as_ref(), &[("lhs", &g), ("rhs", &h), ("product", &gh)])?;
    Ok(element_outcome(&gh, outside))
}

pub fn inv(lhs: &str, psi: Option<&str>) -> Result<Outcome> {
    let g = ElementDocument::parse(lhs)?.to_element()?;
    let gi = g.inverse();
    let psi = parse_psi(psi, g.rank())?;
    let outside = membership(psi.as_ref(), &[("lhs", &g), ("inverse", &gi)])?;
    Ok(element_outcome(&gi, outside))
}

pub fn verify(r: usize, samples: usize, seed: u64, inject_negative_control: bool, format: Format) -> Result<Outcome> {
    if samples == 0 {
        return Err(Error::Parse("samples must be positive".into()));
    }
    let config = VerifyConfig { rank: Rank::new(r)?, samples, seed, inject_negative_control };
    let report = verify::run(&config)?;
    let ok = report.all_passed();
    let out = match format {
        Format::Json => {
            let suites: Vec<Value> =
                report.suites.iter().map(|s| json!({"name": s.name, "checks": s.checks, "failures": s.failures, "passed": s.passed()})).collect();
            let params = json!({"r": r, "samples": samples, "inject_negative_control": inject_negative_control});
            ReportDocument::new("verify", params, json!({"suites": suites, "all_passed": ok}), Some(seed)).to_json()
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = report
                .suites
                .iter()
                .map(|s| vec![s.name.to_string(), s.checks.to_string(), s.failures.to_string(), pass_label(s.passed()).to_string()])
                .collect();
            let mut s = header("verify", &format!("r={r} samples={samples} seed={seed}"));
            s += &table(&["suite", "checks", "failures", "status"], &rows);
            let _ = writeln!(s, "\nall suites: {}", pass_label(ok));
            s
        }
    };
    Ok(Outcome::judged(out, ok, "one or more property suites failed"))
}

pub fn coeff(jmax: u32, format: Format) -> Result<Outcome> {
    if jmax < 1 {
        return Err(Error::InvalidCoefficientIndex);
    }
    let rows = (1..=jmax).map(pontryagin_coefficient).collect::<Result<Vec<_>>>()?;
    let out = match format {
        Format::Json => {
            let table: Vec<Value> = rows
                .iter()
                .map(|c| json!({"j": c.j, "a": c.a, "c": c.c, "factorial": DocInt(c.factorial.clone()), "value": DocInt(c.value.clone())}))
                .collect();
            ReportDocument::new("coeff", json!({"jmax": jmax}), json!({"rows": table}), None).to_json()
        }
        Format::Table => {
            let cells: Vec<Vec<String>> =
                rows.iter().map(|c| vec![c.j.to_string(), c.a.to_string(), c.c.to_string(), c.factorial.to_string(), c.value.to_string()]).collect();
            let mut s = header("coeff", &format!("jmax={jmax}"));
            s += &table(&["j", "a", "c", "(2j-1)!", "value"], &cells);
            s
        }
    };
    Ok(Outcome::ok(out))
}

/// The rank-one section on the Arf-one refinement as an element document,
/// handy for seeding `mul`/`inv` experiments.
pub fn rank_one_section_document(a: &SymplecticMatrix, modulus: Modulus) -> Result<ElementDocument> {
    let g = crate::jacobi::section_r1(a, modulus)?;
    debug_assert!(g.is_member(&arf_one_rank_one()).unwrap_or(false));
    Ok(ElementDocument::from_element(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn doc(g: &JacobiElement) -> String {
        ElementDocument::from_element(g).to_json()
    }

    #[test]
    fn orbit_reports() {
        for (r, a, b) in [(1, "3", "1"), (2, "10", "6"), (4, "136", "120")] {
            let out = orbits(r, Format::Json).unwrap();
            assert_eq!(out.exit, Exit::Success);
            let v: Value = serde_json::from_str(&out.stdout).unwrap();
            let sizes: Vec<String> = v["results"]["orbits"].as_array().unwrap().iter().map(|o| o["size"].to_string()).collect();
            assert!(sizes.contains(&a.to_string()) && sizes.contains(&b.to_string()), "{sizes:?}");
            assert_eq!(v["results"]["pass"], true);
        }
        assert!(orbits(0, Format::Table).is_err());
        assert!(orbits(9, Format::Table).is_err());
    }

    #[test]
    fn split_reports() {
        let v: Value = serde_json::from_str(&split(3, 1, None, Format::Json).unwrap().stdout).unwrap();
        assert_eq!(v["results"]["smooth"]["splits"], true);
        assert_eq!(v["results"]["homotopy"]["modulus"], 24);
        assert_eq!(v["results"]["smooth"]["reframed_section"]["formula"], "A -> (0, A)");

        for p in [3, 7] {
            let v: Value = serde_json::from_str(&split(p, 2, None, Format::Json).unwrap().stdout).unwrap();
            for flavor in ["smooth", "homotopy"] {
                assert_eq!(v["results"][flavor]["splits"], false);
                assert_eq!(v["results"][flavor]["certificate"], "16 refinements, none fixed");
            }
        }
        assert!(split(3, 2, Some(6), Format::Json).is_err());
        assert_eq!(split(3, 2, Some(0), Format::Json).unwrap().exit, Exit::Success);
        assert!(split(5, 2, None, Format::Json).is_err());
    }

    #[test]
    fn element_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in [0, 4, 24] {
            let g = sample::element(&mut rng, Rank::new(2).unwrap(), Modulus::new(m));
            let d = ElementDocument::from_element(&g);
            assert_eq!(ElementDocument::parse(&d.to_json()).unwrap(), d);
            assert_eq!(d.to_element().unwrap(), g);
        }
    }

    #[test]
    fn big_integers_as_strings() {
        let h = SymplecticMatrix::from_i64_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let mut a = SymplecticMatrix::identity(h.rank());
        for _ in 0..60 {
            a = a.mul(&h).unwrap();
        }
        let g = JacobiElement::new(Covector::zero(a.rank(), Modulus::INTEGERS), a).unwrap();
        let text = doc(&g);
        assert!(text.contains('"'), "{text}");
        assert_eq!(ElementDocument::parse(&text).unwrap().to_element().unwrap(), g);
    }

    #[test]
    fn document_validation() {
        let bad_shape = r#"{"r":1,"modulus":4,"x":[0,0],"A":[[1,0]]}"#;
        let not_symplectic = r#"{"r":1,"modulus":4,"x":[0,0],"A":[[2,0],[0,1]]}"#;
        let out_of_range = r#"{"r":1,"modulus":4,"x":[4,0],"A":[[1,0],[0,1]]}"#;
        let unknown = r#"{"r":1,"modulus":4,"x":[0,0],"A":[[1,0],[0,1]],"y":1}"#;
        let bad_string = r#"{"r":1,"modulus":0,"x":["1e3",0],"A":[[1,0],[0,1]]}"#;
        for text in [bad_shape, not_symplectic, out_of_range, unknown, bad_string] {
            assert!(ElementDocument::parse(text).and_then(|d| d.to_element()).is_err(), "{text}");
        }
        let ok = r#"{"r":1,"modulus":0,"x":["-12",3],"A":[[1,1],[0,1]]}"#;
        assert!(ElementDocument::parse(ok).unwrap().to_element().is_ok());
    }

    #[test]
    fn mul_and_inv() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rank = Rank::new(2).unwrap();
        let m = Modulus::new(24);
        let id = JacobiElement::identity(rank, m);
        let g = sample::element(&mut rng, rank, m);
        let h = sample::element(&mut rng, rank, m);
        assert_eq!(mul(&doc(&id), &doc(&g), None).unwrap().stdout, doc(&g));

        let gh = mul(&doc(&g), &doc(&h), None).unwrap().stdout;
        let lhs = inv(&gh, None).unwrap().stdout;
        let rhs = mul(&inv(&doc(&h), None).unwrap().stdout, &inv(&doc(&g), None).unwrap().stdout, None).unwrap().stdout;
        assert_eq!(lhs, rhs);

        let other = sample::element(&mut rng, Rank::new(1).unwrap(), m);
        assert!(mul(&doc(&g), &doc(&other), None).is_err());
        let other_m = sample::element(&mut rng, rank, Modulus::new(4));
        assert!(mul(&doc(&g), &doc(&other_m), None).is_err());
    }

    #[test]
    fn membership_flag() {
        let m = Modulus::new(4);
        let t = SymplecticMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let member = doc(&rank_one_section_document(&t, m).unwrap().to_element().unwrap());
        assert_eq!(inv(&member, Some("11")).unwrap().exit, Exit::Success);
        assert_eq!(mul(&member, &member, Some("11")).unwrap().exit, Exit::Success);
        assert_eq!(inv(&member, Some("00")).unwrap().exit, Exit::PropertyFailure);
        assert!(inv(&member, Some("0011")).is_err());
    }

    #[test]
    fn verify_reports() {
        let a = verify(1, 100, 7, false, Format::Json).unwrap();
        assert_eq!(a.exit, Exit::Success);
        assert_eq!(a.stdout, verify(1, 100, 7, false, Format::Json).unwrap().stdout);
        assert!(a.stdout.contains("\"seed\": 7"));
        assert_eq!(verify(1, 10, 7, true, Format::Table).unwrap().exit, Exit::PropertyFailure);
        assert!(verify(7, 10, 7, false, Format::Json).is_err());
        assert!(verify(1, 0, 7, false, Format::Json).is_err());
    }

    #[test]
    fn coefficient_table() {
        let v: Value = serde_json::from_str(&coeff(4, Format::Json).unwrap().stdout).unwrap();
        let rows = v["results"]["rows"].as_array().unwrap();
        let col = |k: &str| rows.iter().map(|r| r[k].as_u64().unwrap()).collect::<Vec<_>>();
        assert_eq!(col("value"), [4, 12, 240, 5040]);
        assert_eq!(col("c"), [2, 2, 1, 1]);
        assert_eq!(col("a"), [2, 1, 2, 1]);
        assert!(coeff(0, Format::Table).is_err());
    }
}
