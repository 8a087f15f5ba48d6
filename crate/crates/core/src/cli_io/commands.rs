//! The command table of the CLI and the reports it emits.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::format::{matrix_json, sub2_json, to_json, Document, Structure};
use crate::dirac_core::{
    characteristic_pair, check_sub_lie2, derivations, dirac_from_lie2, graph_of, induced_lie2, is_dirac,
    normalizer, OmniSub,
};
use crate::error::Error;
use crate::exact_linalg::{format_rat, unit, vadd};
use crate::gl_two::{check_dgla, GlSpace};
use crate::lie2_core::{is_strict, linfty_check, strict_check, BilinearFunctor, Lie2Structure};
use crate::omni_core::{check_anomaly, check_bilinear_functoriality, check_leibniz, Courant, Dorfman, OmniSpace, Pairing};
use crate::report::{CheckReport, Witness};
use crate::twist_string::{mu_from_alpha, so3_example, string_type, twisted_correspondence, TwistedOmni};
use crate::two_vector::TwoTermComplex;

pub const COMMANDS: &[&str] = &[
    "check-lie2",
    "check-dgla",
    "check-omni",
    "anomaly",
    "check-dirac",
    "graph-dirac",
    "char-pair",
    "from-lie2",
    "normalizer",
    "derivations",
    "twist-check",
    "string-type",
    "so3-example",
];

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub samples: usize,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, samples: 100, timing: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    pub details: Value,
}

impl Report {
    fn from_check(command: &str, r: CheckReport, details: Value) -> Self {
        let verdict = if r.passed() { Verdict::Pass } else { Verdict::Fail };
        Self::build(command, verdict, r, details)
    }

    fn value(command: &str, r: CheckReport, details: Value) -> Self {
        if r.passed() {
            Self::build(command, Verdict::Value, r, details)
        } else {
            Self::build(command, Verdict::Fail, r, details)
        }
    }

    fn build(command: &str, verdict: Verdict, r: CheckReport, details: Value) -> Self {
        let mut witnesses = r.witnesses;
        if verdict == Verdict::Fail && witnesses.is_empty() {
            witnesses.push(Witness { identity: command.to_string(), tuple: Vec::new(), residual: Vec::new() });
        }
        Report {
            command: command.to_string(),
            verdict,
            checked: r.checked,
            failures: r.failures,
            witnesses,
            timing_ms: None,
            details,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass | Verdict::Value => 0,
            Verdict::Fail => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Value => "VALUE",
        };
        let mut out = format!("{}: {verdict} ({} checks, {} failures)\n", self.command, self.checked, self.failures);
        for w in &self.witnesses {
            out.push_str(&format!("  {} at ({}) residual [{}]\n", w.identity, w.tuple.join(", "), w.residual.join(", ")));
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("  time: {t:.1} ms\n"));
        }
        if !self.details.is_null() {
            out.push_str(&serde_json::to_string_pretty(&self.details).expect("serializable"));
            out.push('\n');
        }
        out
    }
}

/// The JSON emitted when inputs cannot be read or a command cannot run.
pub fn error_report(command: &str, err: &Error) -> Value {
    let mut v = json!({ "command": command, "verdict": "error", "error": err.to_string() });
    if let Error::Parse { path, .. } = err {
        v["path"] = json!(path);
    }
    v
}

fn arity(command: &str, docs: &[Document], n: usize) -> Result<(), Error> {
    if docs.len() != n {
        return Err(Error::Precondition(format!("{command} takes {n} input file(s), got {}", docs.len())));
    }
    Ok(())
}

fn wrong_kind(doc: &Document, want: &str) -> Error {
    Error::Precondition(format!("expected {want}, got a {} document", doc.structure.kind()))
}

fn complex_of(doc: &Document) -> Result<TwoTermComplex, Error> {
    doc.structure.complex().cloned().ok_or_else(|| wrong_kind(doc, "a structure with a complex"))
}

/// A `lie2` document, or a `bilinear_functor` read as a strict structure.
fn lie2_of(doc: &Document) -> Result<Lie2Structure, Error> {
    match &doc.structure {
        Structure::Lie2(s) => Ok(s.clone()),
        Structure::BilinearFunctor(f) => Ok(Lie2Structure::strict(f.clone())),
        _ => Err(wrong_kind(doc, "lie2 or bilinear_functor")),
    }
}

fn functor_of(doc: &Document) -> Result<BilinearFunctor, Error> {
    lie2_of(doc).map(|s| s.l2().clone())
}

/// An `omni_sub` document, or the graph of a bracket functor.
fn omni_sub_of(doc: &Document) -> Result<(OmniSpace, OmniSub), Error> {
    match &doc.structure {
        Structure::OmniSub { complex, sub } => Ok((OmniSpace::new(complex), sub.clone())),
        Structure::Lie2(_) | Structure::BilinearFunctor(_) => {
            let f = functor_of(doc)?;
            let space = OmniSpace::new(f.complex());
            let l = graph_of(&space, &f)?;
            Ok((space, l))
        }
        _ => Err(wrong_kind(doc, "omni_sub, lie2 or bilinear_functor")),
    }
}

/// Jacobi identity of `f00` on basis triples of `V0`.
fn jacobi_report(f: &BilinearFunctor) -> CheckReport {
    let n = f.complex().dim_v0();
    let e = |i: usize| unit(n, i);
    let br = |x: &[_], y: &[_]| f.on_objects(x, y);
    let mut r = CheckReport::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (x, y, z) = (e(i), e(j), e(k));
                let s = vadd(&vadd(&br(&x, &br(&y, &z)), &br(&y, &br(&z, &x))), &br(&z, &br(&x, &y)));
                r.expect_zero("jacobi", || vec![format!("u{i}"), format!("u{j}"), format!("u{k}")], &s);
            }
        }
    }
    r
}

fn omni_doc(space: &OmniSpace, sub: &OmniSub) -> Value {
    to_json(&Document::new(Structure::OmniSub { complex: space.complex().clone(), sub: sub.clone() }))
}

fn lie2_doc(s: &Lie2Structure) -> Value {
    to_json(&Document::new(Structure::Lie2(s.clone())))
}

/// Runs one command on parsed inputs.
pub fn run(command: &str, docs: &[Document], opts: &RunOptions) -> Result<Report, Error> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = match command {
        "check-lie2" => {
            arity(command, docs, 1)?;
            let s = lie2_of(&docs[0])?;
            let r = linfty_check(&s);
            let details = json!({ "strict": is_strict(&s), "l3_zero": s.l3().is_zero() });
            Report::from_check(command, r, details)
        }
        "check-dgla" => {
            arity(command, docs, 1)?;
            let c = complex_of(&docs[0])?;
            Report::from_check(command, check_dgla(&c), Value::Null)
        }
        "check-omni" => {
            arity(command, docs, 1)?;
            let space = OmniSpace::new(&complex_of(&docs[0])?);
            let mut r = CheckReport::new();
            let mut per_op = serde_json::Map::new();
            for op in [&Pairing(&space) as &dyn crate::omni_core::OmniBilinear, &Courant(&space), &Dorfman(&space)] {
                let sub = check_bilinear_functoriality(&space, op, opts.samples, &mut rng);
                per_op.insert(op.name().to_string(), json!(sub.passed()));
                r.merge(sub);
            }
            let leib = check_leibniz(&space, opts.samples, &mut rng);
            per_op.insert("leibniz".into(), json!(leib.passed()));
            r.merge(leib);
            Report::from_check(command, r, Value::Object(per_op))
        }
        "anomaly" => {
            arity(command, docs, 1)?;
            let space = OmniSpace::new(&complex_of(&docs[0])?);
            Report::from_check(command, check_anomaly(&space, opts.samples, &mut rng), Value::Null)
        }
        "check-dirac" => {
            arity(command, docs, 1)?;
            let (space, l) = omni_sub_of(&docs[0])?;
            let d = is_dirac(&space, &l)?;
            let details = json!({
                "maximal_isotropic": d.maximal_isotropic,
                "courant_closed": d.courant_closed,
                "dorfman_closed": d.dorfman_closed,
            });
            let mut r = d.report;
            if !matches!(docs[0].structure, Structure::OmniSub { .. }) {
                r.merge(jacobi_report(&functor_of(&docs[0])?));
            }
            Report::from_check(command, r, details)
        }
        "graph-dirac" => {
            arity(command, docs, 1)?;
            let f = functor_of(&docs[0])?;
            let space = OmniSpace::new(f.complex());
            let graph = graph_of(&space, &f)?;
            let d = is_dirac(&space, &graph)?;
            let linfty = linfty_check(&Lie2Structure::strict(f));
            let details = json!({
                "is_dirac": d.is_dirac(),
                "linfty_pass": linfty.passed(),
                "agree": d.is_dirac() == linfty.passed(),
                "graph": omni_doc(&space, &graph),
            });
            let mut r = d.report;
            r.merge(linfty);
            Report::from_check(command, r, details)
        }
        "char-pair" => {
            arity(command, docs, 1)?;
            let (space, l) = omni_sub_of(&docs[0])?;
            let pair = characteristic_pair(&space, &l)?;
            let details = json!({
                "d": sub2_json(&pair.d_part),
                "null_space": sub2_json(&pair.null),
                "pi0": matrix_json(&pair.pi0),
                "pi1": matrix_json(&pair.pi1),
                "d_dims": pair.d_part.dims(),
                "null_dims": pair.null.dims(),
            });
            Report::value(command, CheckReport::new(), details)
        }
        "from-lie2" => {
            arity(command, docs, 1)?;
            let Structure::SubLie2(s) = &docs[0].structure else {
                return Err(wrong_kind(&docs[0], "sub_lie2"));
            };
            let space = OmniSpace::new(&s.complex);
            let l = dirac_from_lie2(&space, &s.w, &s.bracket, s.complement.as_ref())?;
            let d = is_dirac(&space, &l)?;
            let mut r = d.report;
            let recovered = if d.maximal_isotropic && d.courant_closed && d.dorfman_closed {
                let back = induced_lie2(&space, &l)?;
                let same_w = back.w == s.w;
                r.expect_true("round-trip-w", Vec::new, same_w);
                same_w
            } else {
                false
            };
            let details = json!({ "dirac": omni_doc(&space, &l), "dims": l.dims(), "recovers_w": recovered });
            Report::from_check(command, r, details)
        }
        "normalizer" => {
            arity(command, docs, 1)?;
            let (space, l) = omni_sub_of(&docs[0])?;
            let n = normalizer(&space, &l)?;
            let r = check_sub_lie2(space.gl(), &n);
            Report::value(command, r, json!({ "dims": n.dims(), "normalizer": sub2_json(&n) }))
        }
        "derivations" => {
            arity(command, docs, 1)?;
            let s = lie2_of(&docs[0])?;
            let gl = GlSpace::new(s.complex());
            let der = derivations(&gl, &s)?;
            let mut r = check_sub_lie2(&gl, &der);
            let space = OmniSpace::new(s.complex());
            let via_normalizer = normalizer(&space, &graph_of(&space, s.l2())?)?;
            r.expect_true("normalizer-agrees", Vec::new, via_normalizer == der);
            Report::value(command, r, json!({ "dims": der.dims(), "derivations": sub2_json(&der) }))
        }
        "twist-check" => {
            arity(command, docs, 2)?;
            let mu = match &docs[0].structure {
                Structure::Mu(m) => m.clone(),
                Structure::Alpha(a) => mu_from_alpha(a)?,
                _ => return Err(wrong_kind(&docs[0], "mu or alpha")),
            };
            let f = functor_of(&docs[1])?;
            let corr = twisted_correspondence(&mu, &f)?;
            let space = OmniSpace::new(mu.space.complex());
            let mut r = TwistedOmni::new(&space, &mu)?.check_jacobiator();
            let details = json!({
                "twisted_dirac": corr.dirac.is_dirac(),
                "linfty_pass": corr.linfty.passed(),
                "agree": corr.agree(),
                "structure": lie2_doc(&corr.structure),
            });
            r.merge(corr.dirac.report);
            r.merge(corr.linfty);
            Report::from_check(command, r, details)
        }
        "string-type" => {
            arity(command, docs, 1)?;
            let Structure::Quadratic(q) = &docs[0].structure else {
                return Err(wrong_kind(&docs[0], "quadratic"));
            };
            let s = string_type(q)?;
            let r = linfty_check(&s);
            Report::from_check(command, r, json!({ "structure": lie2_doc(&s) }))
        }
        "so3-example" => {
            arity(command, docs, 0)?;
            let ex = so3_example()?;
            let strict = strict_check(&ex.structure).passed();
            let details = json!({
                "chi_e1_e2_e3": format_rat(&ex.chi_e1_e2_e3),
                "twisted_dirac": ex.dirac.is_dirac(),
                "matches_string_type": ex.structure == ex.string,
                "strict": strict,
                "structure": lie2_doc(&ex.structure),
            });
            Report::from_check(command, ex.report, details)
        }
        other => return Err(Error::UnknownCommand(other.to_string())),
    };
    if opts.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report)
}
