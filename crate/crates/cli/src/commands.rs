use std::path::Path;

use semnorm::algebra::generate::clifford_product;
use semnorm::algebra::{BicyclicCarrier, Family, FiniteInverseSemigroup, DEFAULT_BOUND};
use semnorm::clifford_bridge::{is_skew_convex, norm_from_metric, roundtrip_check, verify_dclifford};
use semnorm::io::{self, Document};
use semnorm::metrics::{self, InterlacedSpace};
use semnorm::norms::{self, verify_bicyclic_pseudonorm, BicyclicNorm, GroupNorm, Valuation};
use semnorm::ordermaps::PairMap;
use semnorm::report::{Report, Witness};
use semnorm::{fixtures, Error, Result};

use crate::{
    read, write_or_print, Cli, Command, Direction, FamilyName, Format, GenerateArgs, Inputs, Outcome, Variant, What,
};

pub fn run(cli: &Cli) -> Result<Outcome> {
    let result = match &cli.command {
        Command::Generate(g) => generate(g),
        Command::Verify { what, inputs } => verify(cli, *what, inputs).map(|r| report_outcome(cli, r)),
        Command::Induce { variant, inputs, out } => induce(*variant, inputs, out.as_deref()),
        Command::Bridge { direction, inputs, out } => bridge(cli, *direction, inputs, out.as_deref()),
        Command::Classify { inputs } => classify(cli, inputs),
        Command::Quotient { inputs, out } => quotient(inputs, out.as_deref()),
    };
    match result {
        Err(e) if !e.is_input_error() => Ok(report_outcome(cli, structural_failure(cli, &e))),
        other => other,
    }
}

fn command_name(cli: &Cli) -> &'static str {
    match cli.command {
        Command::Generate(_) => "generate",
        Command::Verify { .. } => "verify",
        Command::Induce { .. } => "induce",
        Command::Bridge { .. } => "bridge",
        Command::Classify { .. } => "classify",
        Command::Quotient { .. } => "quotient",
    }
}

/// A well-formed input that fails a mathematical precondition: exit 1 with
/// the error as the failing assertion.
fn structural_failure(cli: &Cli, e: &Error) -> Report {
    let mut r = Report::new(command_name(cli));
    let w = e.witness().cloned().unwrap_or_else(|| Witness::raw(&[], e.to_string(), "", String::new()));
    r.check("precondition", &e.to_string(), 1, Some(w));
    r
}

fn render(cli: &Cli, r: &Report) -> String {
    match cli.format {
        Format::Json => {
            let mut s = r.to_json();
            s.push('\n');
            s
        }
        Format::Text => r.to_text(),
    }
}

fn report_outcome(cli: &Cli, r: Report) -> Outcome {
    Outcome { stdout: render(cli, &r), passed: r.passed }
}

fn document(path: &Path) -> Result<Document> {
    io::parse_document(&read(path)?)
}

fn need<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::BadParams(format!("missing --{flag}")))
}

fn semigroup(inputs: &Inputs) -> Result<FiniteInverseSemigroup> {
    io::parse_semigroup(&read(need(&inputs.semigroup, "semigroup")?)?)
}

/// A finite carrier and a valuation, from a fixture name or from files.
fn normed(inputs: &Inputs) -> Result<(FiniteInverseSemigroup, Valuation)> {
    if let Some(name) = &inputs.fixture {
        let f = fixtures::catalog()?
            .into_iter()
            .find(|f| &f.name == name)
            .ok_or_else(|| Error::BadParams(format!("unknown fixture {name:?}")))?;
        return Ok((f.semigroup, f.valuation));
    }
    let s = semigroup(inputs)?;
    let v = io::parse_valuation(&read(need(&inputs.valuation, "valuation")?)?)?;
    if v.len() != s.len() {
        return Err(Error::SizeMismatch { expected: s.len(), found: v.len() });
    }
    Ok((s, v))
}

fn pairmap(inputs: &Inputs) -> Result<PairMap> {
    match document(need(&inputs.pairmap, "pairmap")?)? {
        Document::PairMap { sqrt: true, .. } => {
            Err(Error::Format("expected rational values, found square-root radicands".into()))
        }
        Document::PairMap { map, .. } => Ok(map),
        d => Err(Error::Format(format!("expected kind \"pairmap\", found {:?}", d.kind()))),
    }
}

/// `(p, q)` from an interlaced file or from `--pairmap` and `--q`.
fn interlaced_pair(inputs: &Inputs) -> Result<(PairMap, PairMap)> {
    if let Some(path) = &inputs.interlaced {
        return match document(path)? {
            Document::Interlaced { p, q } => Ok((p, q)),
            d => Err(Error::Format(format!("expected kind \"interlaced\", found {:?}", d.kind()))),
        };
    }
    let p = pairmap(inputs)?;
    let q = io::parse_pairmap(&read(need(&inputs.q, "q")?)?)?;
    if p.len() != q.len() {
        return Err(Error::SizeMismatch { expected: p.len(), found: q.len() });
    }
    Ok((p, q))
}

fn interlaced(inputs: &Inputs) -> Result<InterlacedSpace> {
    let (p, q) = interlaced_pair(inputs)?;
    metrics::validate_interlaced(&p, &q)
}

fn labelled(r: Report, s: &FiniteInverseSemigroup) -> Report {
    r.labelled(s.labels())
}

fn generate(g: &GenerateArgs) -> Result<Outcome> {
    let need_n = |flag: &str, v: Option<usize>| v.ok_or_else(|| Error::BadParams(format!("missing --{flag}")));
    let text = match g.family {
        FamilyName::Bicyclic => {
            let k = need_n("k", g.k)?;
            if k == 0 {
                return Err(Error::BadParams("bicyclic dimension must be positive".into()));
            }
            io::bicyclic_to_json(&BicyclicCarrier::new(k), None)
        }
        FamilyName::Clifford => {
            let s = clifford_product(need_n("n", g.n)?, need_n("k", g.k)?)?;
            io::semigroup_to_json(&s)
        }
        family => {
            let f = match family {
                FamilyName::Cyclic => Family::Cyclic { n: need_n("n", g.n)? },
                FamilyName::Powerset => Family::Powerset { n: need_n("n", g.n)? },
                FamilyName::Chain => Family::Chain { n: need_n("n", g.n)? },
                FamilyName::SymInverse => Family::SymInverse { n: need_n("n", g.n)? },
                FamilyName::Grid => Family::Grid { dims: need_n("dims", g.dims)?, max: need_n("max", g.max)? },
                FamilyName::Bicyclic | FamilyName::Clifford => unreachable!(),
            };
            let s = f.finite()?.ok_or_else(|| Error::BadParams("family is not finite".into()))?;
            io::semigroup_to_json(&s)
        }
    };
    Ok(Outcome { stdout: write_or_print(g.out.as_deref(), &text)?.unwrap_or_default(), passed: true })
}

fn verify(cli: &Cli, what: What, inputs: &Inputs) -> Result<Report> {
    match what {
        What::Semigroup => {
            if inputs.fixture.is_some() {
                let (s, _) = normed(inputs)?;
                return Ok(labelled(s.verify_identities(), &s));
            }
            match document(need(&inputs.semigroup, "semigroup")?)? {
                Document::Semigroup(s) => Ok(labelled(s.verify_identities(), &s)),
                Document::Bicyclic { carrier, group_norm } => Ok(bicyclic(cli, carrier, group_norm)),
                d => Err(Error::Format(format!("expected kind \"semigroup\", found {:?}", d.kind()))),
            }
        }
        What::Pseudonorm | What::Norm => {
            if inputs.fixture.is_none() {
                if let Some(path) = &inputs.semigroup {
                    if let Document::Bicyclic { carrier, group_norm } = document(path)? {
                        return Ok(bicyclic(cli, carrier, group_norm));
                    }
                }
            }
            let (s, v) = normed(inputs)?;
            let r = if what == What::Norm { norms::norm_suite(&s, &v)? } else { norms::pseudonorm_suite(&s, &v)? };
            Ok(labelled(r, &s))
        }
        What::Ppm => Ok(metrics::verify_ppm(&pairmap(inputs)?)),
        What::Interlaced => {
            let (p, q) = interlaced_pair(inputs)?;
            Ok(metrics::verify_interlaced(&p, &q))
        }
        What::Skew => {
            let s = semigroup(inputs)?;
            let d = pairmap(inputs)?;
            let sc = is_skew_convex(&s, &d)?;
            let mut r = Report::new("verify skew");
            sc.add_to(&mut r, "d", s.len());
            Ok(labelled(r, &s))
        }
        What::Bridge => {
            let (s, v) = normed(inputs)?;
            Ok(labelled(verify_dclifford(&s, &v)?, &s))
        }
    }
}

/// Sampled checks on the symbolic bicyclic carrier: the semigroup
/// identities and the pseudo-norm induced by the group norm.
fn bicyclic(cli: &Cli, carrier: BicyclicCarrier, group_norm: Option<GroupNorm>) -> Report {
    let gn = group_norm.unwrap_or(GroupNorm::L1);
    let mut r = carrier.verify_identities(cli.samples, cli.seed, DEFAULT_BOUND);
    r.command = format!("verify bicyclic k={} norm={}", carrier.k, gn.name());
    let norm = BicyclicNorm::new(carrier.k, gn);
    r.absorb("norm", verify_bicyclic_pseudonorm(&norm, cli.samples, cli.seed, DEFAULT_BOUND));
    r
}

fn induce(variant: Variant, inputs: &Inputs, out: Option<&Path>) -> Result<Outcome> {
    let (map, sqrt) = if variant == Variant::Dpq {
        (metrics::intrinsic_dpq(&interlaced(inputs)?), false)
    } else {
        let p = if inputs.pairmap.is_some() {
            pairmap(inputs)?
        } else {
            let (s, v) = normed(inputs)?;
            norms::induced_p(&s, &v)?
        };
        let ppm = metrics::validate_ppm(&p)?;
        match variant {
            Variant::D0 => (metrics::d0(&p), false),
            Variant::D1 => (metrics::d1(&p), false),
            _ => (metrics::d2(&ppm).radicands().clone(), true),
        }
    };
    let text = io::pairmap_to_json(&map, sqrt);
    Ok(Outcome { stdout: write_or_print(out, &text)?.unwrap_or_default(), passed: true })
}

fn bridge(cli: &Cli, direction: Direction, inputs: &Inputs, out: Option<&Path>) -> Result<Outcome> {
    match direction {
        Direction::MetricToNorm => {
            let s = semigroup(inputs)?;
            let d = pairmap(inputs)?;
            let (v, r) = norm_from_metric(&s, &d)?;
            if let Some(p) = out {
                write_or_print(Some(p), &io::valuation_to_json(&v))?;
            }
            Ok(report_outcome(cli, labelled(r, &s)))
        }
        Direction::Roundtrip => {
            let (s, v) = normed(inputs)?;
            Ok(report_outcome(cli, labelled(roundtrip_check(&s, &v)?, &s)))
        }
    }
}

fn classify(cli: &Cli, inputs: &Inputs) -> Result<Outcome> {
    let (s, v) = normed(inputs)?;
    let (c, r) = norms::classification_report(&s, &v)?;
    let stdout = match cli.format {
        Format::Json => io::classification_to_json(&c),
        Format::Text => labelled(r.clone(), &s).to_text(),
    };
    Ok(Outcome { stdout, passed: r.passed })
}

fn quotient(inputs: &Inputs, out: Option<&Path>) -> Result<Outcome> {
    let (qs, _) = metrics::quotient(&interlaced(inputs)?)?;
    let text = io::interlaced_to_json(&qs);
    Ok(Outcome { stdout: write_or_print(out, &text)?.unwrap_or_default(), passed: true })
}
