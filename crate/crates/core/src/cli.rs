//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (one line on stderr),
//! 2 on a usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::grothring::replay::replay;
use crate::grothring::{verify_g2_identity, Derivation};
use crate::motive::{poincare_polynomial, projective_bundle_poly, LPolynomial};
use crate::rootsys::parse_cartan;
use crate::schubert::{SchubertCalculus, ZeroLocusDegree};
use crate::weyl::{LengthBijection, ParabolicSubset, WeylGroup, DEFAULT_GROUP_CAP};
use crate::{build_group, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Type name (`G2`, `A3`, ...) or a JSON Cartan matrix literal.
    #[arg(value_name = "TYPE")]
    type_spec: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Bound on the number of roots and group elements enumerated.
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    cap: usize,
}

#[derive(Debug, Parser)]
#[command(name = "g2motive", version, about = "Weyl groups, Bruhat cells and Schubert calculus for the G2 Calabi-Yau pair")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// List the positive roots.
    Roots(Common),
    /// Order of the Weyl group.
    WeylOrder(Common),
    /// Minimal-length representatives of the cosets w W_P.
    Cosets {
        #[command(flatten)]
        common: Common,
        /// Nodes of the Levi, e.g. `1` or `1,2`.
        #[arg(long, value_name = "i[,j...]")]
        parabolic: String,
    },
    /// Class of G/P as a polynomial in L.
    Poincare {
        #[command(flatten)]
        common: Common,
        /// Nodes of the Levi; omitted means G/B.
        #[arg(long, value_name = "i[,j...]", default_value = "")]
        parabolic: String,
        /// Evaluate at L = q.
        #[arg(long, value_name = "q")]
        at: Option<i64>,
    },
    /// Derive L·([X] − [Y]) = 0 from the two blow-up descriptions.
    VerifyIdentity {
        #[command(flatten)]
        common: Common,
        /// Give twice to choose the two parabolics compared (default 1 and 2).
        #[arg(long, value_name = "i[,j...]")]
        parabolic: Vec<String>,
    },
    /// Degree of the Calabi-Yau zero locus in the ambient with node SIDE crossed.
    Degree {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        side: u8,
    },
    /// Full reproduction report.
    Certificate(Common),
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

macro_rules! domain {
    ($e:expr) => {
        $e.map_err(|e| Failure::Domain(Error::from(e)))
    };
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.verb) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.to_string().replace('\n', " ")),
        },
    }
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Text => text(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn parabolic(g: &WeylGroup, text: &str) -> Result<ParabolicSubset, Failure> {
    domain!(ParabolicSubset::parse(text, g.rank()))
}

fn dispatch(verb: Verb) -> Result<String, Failure> {
    match verb {
        Verb::Roots(c) => {
            let cartan = domain!(parse_cartan(&c.type_spec))?;
            let roots = domain!(crate::rootsys::generate_root_system(&cartan, c.cap))?;
            let report = RootsReport {
                type_spec: c.type_spec.clone(),
                cartan: cartan.rows(),
                positive_roots: roots.positive_roots().iter().map(|r| r.0.clone()).collect(),
            };
            Ok(emit(c.format, &report, |r| {
                r.positive_roots
                    .iter()
                    .map(|v| format!("{}\n", crate::rootsys::RootVector(v.clone())))
                    .collect()
            }))
        }
        Verb::WeylOrder(c) => {
            let g = build_group(&c.type_spec, c.cap)?;
            let report = WeylOrderReport {
                type_spec: c.type_spec.clone(),
                order: g.order(),
            };
            Ok(emit(c.format, &report, |r| format!("{}\n", r.order)))
        }
        Verb::Cosets { common, parabolic: p } => {
            let g = build_group(&common.type_spec, common.cap)?;
            let p = parabolic(&g, &p)?;
            let report = cosets_report(&g, &p)?;
            Ok(emit(common.format, &report, |r| {
                r.representatives
                    .iter()
                    .map(|e| format!("{}\n", e.word))
                    .collect()
            }))
        }
        Verb::Poincare {
            common,
            parabolic: p,
            at,
        } => {
            let g = build_group(&common.type_spec, common.cap)?;
            let p = parabolic(&g, &p)?;
            let poly = domain!(poincare_polynomial(&g, &p))?;
            let report = PoincareReport {
                parabolic: p.nodes().iter().copied().collect(),
                text: poly.to_string(),
                at: at.map(|q| (q, poly.eval(q))),
                polynomial: poly,
            };
            Ok(emit(common.format, &report, |r| {
                let mut s = format!("{}\n", r.text);
                if let Some((q, v)) = r.at {
                    s.push_str(&format!("L = {q}: {v}\n"));
                }
                s
            }))
        }
        Verb::VerifyIdentity { common, parabolic: ps } => {
            let g = build_group(&common.type_spec, common.cap)?;
            let (p1, p2) = match ps.len() {
                0 => (
                    domain!(ParabolicSubset::new([1], g.rank()))?,
                    domain!(ParabolicSubset::new([2.min(g.rank())], g.rank()))?,
                ),
                2 => (parabolic(&g, &ps[0])?, parabolic(&g, &ps[1])?),
                n => {
                    return Err(Failure::Usage(format!(
                        "verify-identity takes --parabolic exactly twice or not at all, got {n}"
                    )))
                }
            };
            let report = identity_report(&g, &p1, &p2)?;
            Ok(emit(common.format, &report, render_identity))
        }
        Verb::Degree { common, side } => {
            let g = build_group(&common.type_spec, common.cap)?;
            let s = domain!(SchubertCalculus::new(&g))?;
            let report = degree_report(&s, side as usize)?;
            Ok(emit(common.format, &report, |r| format!("{}\n", r.degree)))
        }
        Verb::Certificate(c) => {
            let report = certificate(&c.type_spec, c.cap)?;
            Ok(emit(c.format, &report, render_certificate))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsReport {
    pub type_spec: String,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylOrderReport {
    pub type_spec: String,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetEntry {
    pub word: String,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetsReport {
    pub parabolic: Vec<usize>,
    pub representatives: Vec<CosetEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareReport {
    pub parabolic: Vec<usize>,
    pub polynomial: LPolynomial,
    pub text: String,
    pub at: Option<(i64, i128)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub f1: LPolynomial,
    pub f2: LPolynomial,
    pub derivation: Derivation,
    pub replay_checked_steps: usize,
    pub final_line: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub side: usize,
    /// Levi nodes of the ambient `G/P`.
    pub ambient_levi: Vec<usize>,
    /// `int h^dim` over the ambient.
    pub ambient_degree: i64,
    pub c1: Vec<(String, i64)>,
    pub c2: Vec<(String, i64)>,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionPair {
    pub left: String,
    pub right: String,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub type_spec: String,
    pub cartan: Vec<Vec<i64>>,
    pub weyl_order: usize,
    pub s1s2_order: usize,
    pub cosets: Vec<CosetsReport>,
    pub bijection: Vec<BijectionPair>,
    pub flag_variety: LPolynomial,
    pub bundle_check: bool,
    pub identity: IdentityReport,
    pub degrees: Vec<DegreeReport>,
}

pub fn cosets_report(g: &WeylGroup, p: &ParabolicSubset) -> Result<CosetsReport, Error> {
    Ok(CosetsReport {
        parabolic: p.nodes().iter().copied().collect(),
        representatives: g
            .min_coset_reps(p)?
            .iter()
            .map(|w| CosetEntry {
                word: w.to_string(),
                length: w.length(),
            })
            .collect(),
    })
}

pub fn identity_report(g: &WeylGroup, p1: &ParabolicSubset, p2: &ParabolicSubset) -> Result<IdentityReport, Error> {
    let f1 = poincare_polynomial(g, p1)?;
    let f2 = poincare_polynomial(g, p2)?;
    let derivation = verify_g2_identity(&f1, &f2)?;
    replay(&derivation)?;
    Ok(IdentityReport {
        final_line: derivation.final_line(),
        replay_checked_steps: derivation.steps.len(),
        f1,
        f2,
        derivation,
    })
}

pub fn degree_report(s: &SchubertCalculus<'_>, side: usize) -> Result<DegreeReport, Error> {
    let ZeroLocusDegree {
        side,
        ambient,
        ambient_degree,
        c1,
        c2,
        degree,
    } = s.degree_of_zero_locus(side)?;
    Ok(DegreeReport {
        side,
        ambient_levi: ambient.nodes().iter().copied().collect(),
        ambient_degree,
        c1: s.to_pairs(&c1),
        c2: s.to_pairs(&c2),
        degree,
    })
}

pub fn certificate(type_spec: &str, cap: usize) -> Result<CertificateReport, Error> {
    let g = build_group(type_spec, cap)?;
    if g.rank() != 2 {
        return Err(crate::schubert::SchubertError::UnsupportedRank(g.rank()).into());
    }
    let p1 = ParabolicSubset::new([1], 2)?;
    let p2 = ParabolicSubset::new([2], 2)?;
    let s1s2 = g.from_word(&[1, 2])?;
    let bijection = match g.length_bijection(&p1, &p2)? {
        LengthBijection::Bijection(pairs) => pairs
            .into_iter()
            .map(|(a, b)| BijectionPair {
                length: a.length(),
                left: a.to_string(),
                right: b.to_string(),
            })
            .collect(),
        LengthBijection::Mismatch { .. } => Vec::new(),
    };
    let flag_variety = poincare_polynomial(&g, &ParabolicSubset::empty())?;
    let f1 = poincare_polynomial(&g, &p1)?;
    let f2 = poincare_polynomial(&g, &p2)?;
    let bundle_check = projective_bundle_poly(&f1, 2) == flag_variety
        && projective_bundle_poly(&f2, 2) == flag_variety;
    let identity = identity_report(&g, &p1, &p2)?;
    let s = SchubertCalculus::new(&g)?;
    let degrees = vec![degree_report(&s, 1)?, degree_report(&s, 2)?];
    Ok(CertificateReport {
        type_spec: type_spec.to_string(),
        cartan: g.root_system().cartan().rows(),
        weyl_order: g.order(),
        s1s2_order: g.element_order(&s1s2)?,
        cosets: vec![cosets_report(&g, &p1)?, cosets_report(&g, &p2)?],
        bijection,
        flag_variety,
        bundle_check,
        identity,
        degrees,
    })
}

fn render_identity(r: &IdentityReport) -> String {
    format!(
        "[F1] = {}\n[F2] = {}\nreplay check: {} steps verified\n\n{}",
        r.f1,
        r.f2,
        r.replay_checked_steps,
        r.derivation.render()
    )
}

fn render_pairs(pairs: &[(String, i64)]) -> String {
    if pairs.is_empty() {
        return "0".into();
    }
    pairs
        .iter()
        .enumerate()
        .map(|(k, (w, c))| {
            let sign = match (k, *c < 0) {
                (0, true) => "-".to_string(),
                (0, false) => String::new(),
                (_, true) => " - ".to_string(),
                (_, false) => " + ".to_string(),
            };
            match c.unsigned_abs() {
                1 => format!("{sign}sigma[{w}]"),
                a => format!("{sign}{a}*sigma[{w}]"),
            }
        })
        .collect()
}

fn render_certificate(r: &CertificateReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("type {}: Cartan matrix {:?}\n", r.type_spec, r.cartan));
    out.push_str(&format!(
        "Weyl group: order {}, (s1*s2) has order {}\n\n",
        r.weyl_order, r.s1s2_order
    ));
    for c in &r.cosets {
        let words: Vec<&str> = c.representatives.iter().map(|e| e.word.as_str()).collect();
        out.push_str(&format!("W^P for P = {:?}: {}\n", c.parabolic, words.join(", ")));
    }
    out.push_str("length-preserving bijection:\n");
    for b in &r.bijection {
        out.push_str(&format!("  {} -> {}   (length {})\n", b.left, b.right, b.length));
    }
    out.push_str(&format!(
        "\n[F12] = {}\nP^1-bundle check [F12] = (1 + L)[Fi]: {}\n\n",
        r.flag_variety,
        if r.bundle_check { "ok" } else { "FAILED" }
    ));
    out.push_str(&render_identity(&r.identity));
    out.push('\n');
    for d in &r.degrees {
        out.push_str(&format!(
            "side {}: ambient G/P with Levi {:?}, deg O(1) = {}; c1(E) = {}, c2(E) = {}; deg of zero locus = {}\n",
            d.side,
            d.ambient_levi,
            d.ambient_degree,
            render_pairs(&d.c1),
            render_pairs(&d.c2),
            d.degree
        ));
    }
    out
}
