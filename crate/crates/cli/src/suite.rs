//! Named audit sweeps over enumerated instances.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use qcat_core::colimits::is_finitely_cocomplete;
use qcat_core::duality::{
    c_of_distributor, functoriality_check, functoriality_exhaustive_audit, functoriality_sample_audit,
    representability_audit, representable_table_audit, required_conditions, total_partial_audit,
    total_partial_sweep, zero_set, Corpus, FunctionSpace,
};
use qcat_core::enriched::{
    adjunction_audit, enriched_c_map, enumerate_cx, is_cogenerated, lemma1_audit, pointsep_extension_audit,
    tensor_maximality_audit, twovalued_audit, CorpusConfig,
};
use qcat_core::poset::all_posets;
use qcat_core::quantale::{no_zero_divisor_audit, verify_quantale_axioms, AxiomDomain, QuantaleError};
use qcat_core::stone_weierstrass::{downset_indicators, generate_closure, sep_premise_audit, sw_audit_on, OpSet, SepLemma};
use qcat_core::vcat::all_grid_categories;
use qcat_core::vietoris::{all_kleisli_morphisms, verify_monad_laws, KleisliMorphism};
use qcat_core::{Audit, FinPoset, Quantale, Subset, TNorm, VCategory};

use crate::instance::{Instance, InstanceKind};
use crate::report::{ConfigEcho, Report};

const SAMPLE_MAX_DEN: u64 = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SuiteName {
    QuantaleAxioms,
    MonadLaws,
    Representability,
    Functoriality,
    TotalPartial,
    StoneWeierstrass,
    EnrichedRoundtrip,
    Lemma1,
    Twovalued,
    TensorMaximality,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::QuantaleAxioms,
        SuiteName::MonadLaws,
        SuiteName::Representability,
        SuiteName::Functoriality,
        SuiteName::TotalPartial,
        SuiteName::StoneWeierstrass,
        SuiteName::EnrichedRoundtrip,
        SuiteName::Lemma1,
        SuiteName::Twovalued,
        SuiteName::TensorMaximality,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::QuantaleAxioms => "quantale-axioms",
            SuiteName::MonadLaws => "monad-laws",
            SuiteName::Representability => "representability",
            SuiteName::Functoriality => "functoriality",
            SuiteName::TotalPartial => "total-partial",
            SuiteName::StoneWeierstrass => "stone-weierstrass",
            SuiteName::EnrichedRoundtrip => "enriched-roundtrip",
            SuiteName::Lemma1 => "lemma1",
            SuiteName::Twovalued => "twovalued",
            SuiteName::TensorMaximality => "tensor-maximality",
        }
    }

    /// Largest `(max_size, grid)` the suite accepts.
    fn caps(self) -> (usize, u32) {
        match self {
            SuiteName::QuantaleAxioms => (usize::MAX, 64),
            SuiteName::MonadLaws => (5, 254),
            SuiteName::Representability => (4, 6),
            SuiteName::Functoriality => (4, 4),
            SuiteName::TotalPartial => (3, 4),
            SuiteName::StoneWeierstrass => (4, 6),
            SuiteName::EnrichedRoundtrip | SuiteName::Lemma1 => (3, 3),
            SuiteName::Twovalued => (4, 3),
            SuiteName::TensorMaximality => (3, 2),
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<SuiteName, SuiteError> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{what} = {value} exceeds the cap {cap} for this suite")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("grid not closed: {0}")]
    GridNotClosed(#[from] QuantaleError),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Core(String),
}

fn core_err(e: impl fmt::Display) -> SuiteError {
    SuiteError::Core(e.to_string())
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub tnorm: TNorm,
    pub grid: u32,
    pub exact_grid: bool,
    pub max_size: usize,
    pub seed: u64,
    pub corpus: usize,
    /// A single carrier replacing the enumeration, with its display label.
    pub instance: Option<(String, Instance)>,
}

impl SuiteConfig {
    pub fn new(suite: SuiteName) -> SuiteConfig {
        SuiteConfig {
            suite,
            tnorm: TNorm::Lukasiewicz,
            grid: 2,
            exact_grid: false,
            max_size: 3,
            seed: 0,
            corpus: 1000,
            instance: None,
        }
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            tnorm: self.tnorm.to_string(),
            grid: self.grid,
            exact_grid: self.exact_grid,
            max_size: self.max_size,
            seed: self.seed,
            corpus: self.corpus,
            instance: self.instance.as_ref().map(|(l, _)| l.clone()),
        }
    }

    fn grids(&self) -> Vec<u32> {
        if self.exact_grid {
            vec![self.grid]
        } else {
            (1..=self.grid).collect()
        }
    }

    fn quantale(&self) -> Quantale {
        Quantale::new(self.tnorm.clone())
    }

    fn posets(&self) -> Result<Vec<(String, FinPoset)>, SuiteError> {
        match &self.instance {
            Some((label, inst)) => inst
                .poset()
                .map(|p| vec![(label.clone(), p)])
                .ok_or_else(|| SuiteError::Unsupported(format!("{label}: this suite needs an order-based carrier"))),
            None => Ok((1..=self.max_size)
                .flat_map(|size| {
                    all_posets(size)
                        .into_iter()
                        .enumerate()
                        .map(move |(i, p)| (format!("P{size}.{i}"), p))
                })
                .collect()),
        }
    }

    fn categories(&self, q: &Quantale, n: u32) -> Result<Vec<(String, VCategory)>, SuiteError> {
        match &self.instance {
            Some((label, inst)) => {
                let x = inst
                    .category(q)
                    .ok_or_else(|| SuiteError::Unsupported(format!("{label}: this suite needs a category")))?;
                Ok(vec![(label.clone(), x)])
            }
            None => Ok((1..=self.max_size)
                .flat_map(|size| {
                    all_grid_categories(q, n, size)
                        .into_iter()
                        .filter(VCategory::is_separated)
                        .enumerate()
                        .map(move |(i, x)| (format!("X{size}.{i}"), x))
                })
                .collect()),
        }
    }

    fn check_caps(&self) -> Result<(), SuiteError> {
        let (size_cap, grid_cap) = self.suite.caps();
        if self.instance.is_none() && self.max_size > size_cap {
            return Err(SuiteError::CapExceeded {
                what: "max-size",
                value: self.max_size as u64,
                cap: size_cap as u64,
            });
        }
        if self.grid == 0 || self.grid > grid_cap {
            return Err(SuiteError::CapExceeded {
                what: "grid",
                value: self.grid as u64,
                cap: grid_cap as u64,
            });
        }
        Ok(())
    }

    fn require_tnorm(&self, allowed: &[TNorm]) -> Result<(), SuiteError> {
        if allowed.contains(&self.tnorm) {
            return Ok(());
        }
        let names: Vec<String> = allowed.iter().map(TNorm::to_string).collect();
        Err(SuiteError::Unsupported(format!(
            "suite {} runs for {} only",
            self.suite,
            names.join(" or ")
        )))
    }

    fn require_grids(&self, q: &Quantale) -> Result<(), SuiteError> {
        for n in self.grids() {
            q.grid_algebra(n)?;
        }
        Ok(())
    }
}

/// Runs the configured sweep.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    cfg.check_caps()?;
    let start = Instant::now();
    let mut report = Report::new(cfg.suite.as_str(), cfg.echo());
    match cfg.suite {
        SuiteName::QuantaleAxioms => quantale_axioms(cfg, &mut report),
        SuiteName::MonadLaws => monad_laws(cfg, &mut report),
        SuiteName::Representability => representability(cfg, &mut report),
        SuiteName::Functoriality => functoriality(cfg, &mut report),
        SuiteName::TotalPartial => total_partial(cfg, &mut report),
        SuiteName::StoneWeierstrass => stone_weierstrass(cfg, &mut report),
        SuiteName::EnrichedRoundtrip => enriched_roundtrip(cfg, &mut report),
        SuiteName::Lemma1 => lemma1(cfg, &mut report),
        SuiteName::Twovalued => twovalued(cfg, &mut report),
        SuiteName::TensorMaximality => tensor_maximality(cfg, &mut report),
    }?;
    report.elapsed = start.elapsed();
    Ok(report)
}

fn note(report: &mut Report, instance: &str, text: impl Into<String>) {
    let mut a = Audit::new("summary");
    a.note(text);
    report.add(instance, a);
}

fn quantale_axioms(cfg: &SuiteConfig, report: &mut Report) -> Result<(), SuiteError> {
    let q = cfg.quantale();
    let mut skipped = 0;
    for n in cfg.grids() {
        if !q.grid_closed(n) {
            skipped += 1;
            continue;
        }
        let label = format!("Q_{n}");
        report.add(&label, verify_quantale_axioms(&q, AxiomDomain::Grid(n)));
        report.add(&label, no_zero_divisor_audit(&q, AxiomDomain::Grid(n)));
        report.instances += 1;
    }
    if skipped > 0 {
        note(report, "grids", format!("{skipped} grids are not closed under {q}; sampling rationals instead"));
        let domain = AxiomDomain::Sample {
            seed: cfg.seed,
            count: cfg.corpus,
            max_den: SAMPLE_MAX_DEN,
        };
        report.add("sample", verify_quantale_axioms(&q, domain));
        report.add("sample", no_zero_divisor_audit(&q, domain));
        report.instances += 1;
    }
    Ok(())
}

fn monad_laws(cfg: &SuiteConfig, report: &mut Report) -> Result<(), SuiteError> {
    for (label, p) in cfg.posets()? {
        report.add(&label, verify_monad_laws(&p));
        report.instances += 1;
    }
    Ok(())
}

fn representability(cfg: &SuiteConfig, report: &mut Report) -> Result<(), SuiteError> {
    let q = cfg.quantale();
    cfg.require_grids(&q)?;
    let required = required_conditions(&q);
    let names: Vec<String> = required.iter().map(|c| c.to_string()).collect();
    note(report, "suite", format!("required conditions: {}", names.join(", ")));
    for (label, p) in cfg.posets()? {
        for n in cfg.grids() {
            let cx = FunctionSpace::antitone(&p, &q, n).map_err(core_err)?;
            let tag = format!("{label} n={n}");
            report.add(&tag, representable_table_audit(&p, &cx));
            let corpus = Corpus::Exhaustive {
                fallback_seed: cfg.seed,
                fallback_size: cfg.corpus,
            };
            let rep = representability_audit(&p, &q, &cx, &required, corpus);
            report.metric("functionals scanned", rep.scanned);
            report.metric("passing functionals", rep.passing.len() as u64);
            report.metric("representables found", rep.representable);
            let gap = report.metrics.entry("max gap (grid steps)".into()).or_default();
            *gap = (*gap).max(rep.max_gap as u64);
            if rep.passing.len() <= 16 {
                for phi in &rep.passing {
                    let a = zero_set(&cx, phi);
                    note(report, &tag, format!("passing {} with Zero = {a}", phi.render(&cx)));
                }
            }
            report.add(&tag, rep.audit);
            report.instances += 1;
        }
    }
    Ok(())
}

fn functoriality(cfg: &SuiteConfig, report: &mut Report) -> Result<(), SuiteError> {
    let q = cfg.quantale();
    cfg.require_grids(&q)?;
    for n in cfg.grids() {
        match &cfg.instance {
            Some(_) => {
                let (label, p) = cfg.posets()?.remove(0);
                let cx = FunctionSpace::antitone(&p, &q, n).map_err(core_err)?;
                let ks = all_kleisli_morphisms(&p, &p);
                let mut a = Audit::new("functoriality");
                for f in &ks {
                    for g in &ks {
                        let ok = functoriality_check(f, g, &cx, &cx, &cx).map_err(core_err)?;
                        a.check(ok, "C(φ'·φ) = Cφ ∘ Cφ'", || format!("{:?} then {:?}", f.rows(), g.rows()));
                    }
                }
                report.add(&format!("{label} n={n}"), a);
                report.instances += 1;
            }
            None => {
                let small = cfg.max_size.min(2);
                report.add(
                    &format!("sizes<={small} n={n}"),
                    functoriality_exhaustive_audit(&q, n, small).map_err(core_err)?,
                );
                report.add(
                    &format!("sizes<={} n={n}", cfg.max_size),
                    functoriality_sample_audit(&q, n, cfg.max_size, cfg.seed, cfg.corpus).map_err(core_err)?,
                );
                report.instances += 2;
            }
        }
    }
    Ok(())
}

fn total_partial(cfg: &SuiteConfig, report: &mut Report) -> Result<(), SuiteError> {
    let q = cfg.quantale();
    cfg.require_grids(&q)?;
    for n in cfg.grids() {
        match &cfg.instance {
            Some(_) => {
                let (label, p) = cfg.posets()?.remove(0);
                let cx = FunctionSpace::antitone(&p, &q, n).map_err(core_err)?;
                for f in all_kleisli_morphisms(&p, &p) {
                    report.add(&format!("{label} n={n}"), total_partial_audit(&f, &p, &cx, &cx));
                    report.instances += 1;
                }
            }
            None => {
                report.add(
                    &format!("sizes<={} n={n}", cfg.max_size),
                    total_partial_sweep(&q, n, cfg.max_size).map_err(core_err)?,
                );
                report.instances += 1;
            }
        }
    }
    Ok(())
}

fn stone_weierstrass(cfg: &SuiteConfig, report: &mut Report) -> Result<(), SuiteError> {
    let q = cfg.quantale();
    cfg.require_grids(&q)?;
    let lemma = if cfg.tnorm == TNorm::Lukasiewicz {
        SepLemma::MonoidPowers
    } else {
        SepLemma::PowersMinus
    };
    let explicit = match cfg.instance.as_ref().map(|(_, i)| &i.kind) {
        Some(InstanceKind::Generators { functions, .. }) => Some(functions.clone()),
        _ => None,
    };
    for (label, p) in cfg.posets()? {
        for n in cfg.grids() {
            let cx = FunctionSpace::antitone(&p, &q, n).map_err(core_err)?;
            let tag = format!("{label} n={n}");
            let gens = match &explicit {
                Some(fs) => fs
                    .iter()
                    .map(|f| cx.index_of_values(f))
                    .collect::<Option<Vec<usize>>>()
                    .ok_or_else(|| SuiteError::Unsupported(format!("{tag}: a generator is off the grid")))?,
                None => downset_indicators(&cx),
            };
            let sw = sw_audit_on(&cx, Some(&gens));
            if sw.exact {
                report.metric("exact closures", 1);
            }
            report.metric("closures", 1);
            report.add(&tag, sw.audit);
            let full = generate_closure(&cx, &gens, OpSet::ALL);
            report.add(&tag, sep_premise_audit(&cx, &full, lemma));
            report.instances += 1;
        }
    }
    Ok(())
}

fn cogenerated(cfg: &SuiteConfig, q: &Quantale, n: u32, report: &mut Report) -> Result<Vec<(String, VCategory, FunctionSpace)>, SuiteError> {
    let mut out = Vec::new();
    let cats = cfg.categories(q, n)?;
    let total = cats.len();
    for (label, x) in cats {
        let cx = enumerate_cx(&x, n).map_err(core_err)?;
        if is_cogenerated(&x, &cx) {
            out.push((label, x, cx));
        } else if cfg.instance.is_some() {
            note(report, &label, "not cogenerated by its function space; skipped");
        }
    }
    note(report, &format!("n={n}"), format!("{} of {total} separated categories are cogenerated", out.len()));
    Ok(out)
}

fn enriched_roundtrip(cfg: &SuiteConfig, report: &mut Report) -> Result<(), SuiteError> {
    cfg.require_tnorm(&[TNorm::Lukasiewicz])?;
    let q = cfg.quantale();
    cfg.require_grids(&q)?;
    let corpus = CorpusConfig {
        seed: cfg.seed,
        size: cfg.corpus,
    };
    for n in cfg.grids() {
        for (label, x, cx) in cogenerated(cfg, &q, n, report)? {
            let tag = format!("{label} n={n}");
            let adj = adjunction_audit(&x, &cx, corpus);
            report.metric("grid weights", adj.weights as u64);
            report.metric("functionals checked", adj.functionals);
            if !x.is_crisp() {
                report.metric("non-order-based instances", 1);
            }
            report.add(&tag, adj.audit);
            report.add(&tag, lemma1_audit(&x, &cx));
            report.add(&tag, pointsep_extension_audit(&x, &cx));
            report.instances += 1;
        }
    }
    Ok(())
}

fn lemma1(cfg: &SuiteConfig, report: &mut Report) -> Result<(), SuiteError> {
    cfg.require_tnorm(&[TNorm::Lukasiewicz, TNorm::Minimum])?;
    let q = cfg.quantale();
    cfg.require_grids(&q)?;
    for n in cfg.grids() {
        for (label, x, cx) in cogenerated(cfg, &q, n, report)? {
            report.add(&format!("{label} n={n}"), lemma1_audit(&x, &cx));
            report.instances += 1;
        }
    }
    Ok(())
}

fn twovalued(cfg: &SuiteConfig, report: &mut Report) -> Result<(), SuiteError> {
    cfg.require_tnorm(&[TNorm::Lukasiewicz])?;
    let q = cfg.quantale();
    cfg.require_grids(&q)?;
    for (label, p) in cfg.posets()? {
        let x = VCategory::from_poset(q.clone(), &p);
        for n in cfg.grids() {
            let cx = enumerate_cx(&x, n).map_err(core_err)?;
            report.add(&format!("{label} n={n}"), twovalued_audit(&x, &cx).map_err(core_err)?);
            report.instances += 1;
        }
    }
    Ok(())
}

fn tensor_maximality(cfg: &SuiteConfig, report: &mut Report) -> Result<(), SuiteError> {
    cfg.require_tnorm(&[TNorm::Lukasiewicz])?;
    let q = cfg.quantale();
    cfg.require_grids(&q)?;
    for (label, p) in cfg.posets()? {
        let x = VCategory::from_poset(q.clone(), &p);
        for n in cfg.grids() {
            let cx = enumerate_cx(&x, n).map_err(core_err)?;
            for psi0 in 0..cx.len() {
                let r = tensor_maximality_audit(&x, &cx, psi0).map_err(core_err)?;
                report.metric("candidates", r.candidates as u64);
                report.metric("survivors", r.survivors as u64);
                report.add(&format!("{label} n={n} ψ₀={}", cx.render(psi0)), r.audit);
                report.instances += 1;
            }
        }
    }
    Ok(())
}

/// Validates one instance and runs the checks that apply to its kind.
pub fn check_instance(label: &str, inst: &Instance) -> Result<Report, SuiteError> {
    let start = Instant::now();
    let q = inst.quantale.clone();
    let echo = ConfigEcho {
        tnorm: q.to_string(),
        grid: inst.grid.unwrap_or(0),
        instance: Some(label.to_string()),
        ..ConfigEcho::default()
    };
    let mut report = Report::new(&format!("check {}", inst.kind_name()), echo);
    report.instances = 1;
    if inst.grid.is_none() {
        note(&mut report, label, "no closed grid: only exact structural checks run");
    }
    match &inst.kind {
        InstanceKind::Poset(p) => {
            report.metric("upper sets", p.upper_sets().len() as u64);
            report.add(label, verify_monad_laws(p));
            if let Some(n) = inst.grid {
                let cx = FunctionSpace::antitone(p, &q, n).map_err(core_err)?;
                report.metric("antitone maps", cx.len() as u64);
                report.add(label, representable_table_audit(p, &cx));
            }
        }
        InstanceKind::VCategory(x) => {
            note(
                &mut report,
                label,
                format!("separated: {}, order-based: {}", x.is_separated(), x.is_crisp()),
            );
            if let Some(n) = inst.grid {
                let fin = is_finitely_cocomplete(x, n);
                let mut a = Audit::new("finite cocompleteness");
                a.note(format!("finitely cocomplete on Q_{n}: {}", fin.passed()));
                for w in &fin.witnesses {
                    a.note(w.to_string());
                }
                report.add(label, a);
                if x.is_separated() {
                    let cx = enumerate_cx(x, n).map_err(core_err)?;
                    report.metric("function space size", cx.len() as u64);
                    let cog = is_cogenerated(x, &cx);
                    note(&mut report, label, format!("cogenerated: {cog}"));
                    if cog && q.tnorm() == &TNorm::Lukasiewicz {
                        report.add(label, adjunction_audit(x, &cx, CorpusConfig::default()).audit);
                        report.add(label, lemma1_audit(x, &cx));
                    }
                }
            }
        }
        InstanceKind::Distributor {
            source,
            target,
            relation,
        } => {
            let crisp = source.is_crisp() && target.is_crisp() && relation.matrix().is_crisp();
            if let (Some(n), true) = (inst.grid, crisp) {
                let (x, y) = (
                    source.natural_poset().map_err(core_err)?,
                    target.natural_poset().map_err(core_err)?,
                );
                let rows = (0..x.size())
                    .map(|i| Subset::from_elements(y.size(), (0..y.size()).filter(|&j| relation.get(i, j).is_one())))
                    .collect();
                let k = KleisliMorphism::new(&x, &y, rows).map_err(core_err)?;
                let cx = FunctionSpace::antitone(&x, &q, n).map_err(core_err)?;
                let cy = FunctionSpace::antitone(&y, &q, n).map_err(core_err)?;
                report.add(label, total_partial_audit(&k, &y, &cx, &cy));
                let c = c_of_distributor(&k, &cy, &cx).map_err(core_err)?;
                note(&mut report, label, format!("C maps constant 1 to {}", cx.render(c[cy.one()])));
            } else if let Some(n) = inst.grid {
                if source.is_separated() && target.is_separated() {
                    let cx = enumerate_cx(source, n).map_err(core_err)?;
                    let cy = enumerate_cx(target, n).map_err(core_err)?;
                    let mut a = Audit::new("enriched C");
                    let image = enriched_c_map(relation, &cy, &cx);
                    a.check(image.is_ok(), "Cφ lands in the function space", || {
                        image.as_ref().err().map(ToString::to_string).unwrap_or_default()
                    });
                    report.add(label, a);
                }
            }
        }
        InstanceKind::Generators { poset, functions } => {
            if let Some(n) = inst.grid {
                let cx = FunctionSpace::antitone(poset, &q, n).map_err(core_err)?;
                let gens = functions
                    .iter()
                    .map(|f| cx.index_of_values(f))
                    .collect::<Option<Vec<usize>>>()
                    .ok_or_else(|| SuiteError::Unsupported("a generator is off the grid".into()))?;
                let sw = sw_audit_on(&cx, Some(&gens));
                report.metric("closure size", sw.closure.len() as u64);
                report.metric("function space size", cx.len() as u64);
                report.add(label, sw.audit);
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    fn cfg(suite: SuiteName) -> SuiteConfig {
        SuiteConfig::new(suite)
    }

    #[test]
    fn names_roundtrip() {
        for s in SuiteName::ALL {
            assert_eq!(s.as_str().parse::<SuiteName>().unwrap(), s);
        }
        assert_eq!("foo".parse::<SuiteName>(), Err(SuiteError::UnknownSuite("foo".into())));
    }

    #[test]
    fn monad_law_counts() {
        let mut c = cfg(SuiteName::MonadLaws);
        c.max_size = 3;
        let r = run_suite(&c).unwrap();
        assert_eq!((r.instances, r.failed), (1 + 3 + 19, 0));
    }

    #[test]
    fn flagship_representability() {
        let mut c = cfg(SuiteName::Representability);
        c.exact_grid = true;
        c.instance = Some(("chain".into(), parse_instance(r#"{"kind": "poset", "leq": [[1,1],[0,1]]}"#).unwrap()));
        let r = run_suite(&c).unwrap();
        assert_eq!(r.metrics["functionals scanned"], 729);
        assert_eq!(r.metrics["representables found"], 3);
        assert_eq!(r.status(), crate::report::Status::Pass);
    }

    #[test]
    fn config_errors() {
        let mut c = cfg(SuiteName::Representability);
        c.tnorm = TNorm::Product;
        assert!(matches!(run_suite(&c), Err(SuiteError::GridNotClosed(_))));
        let mut c = cfg(SuiteName::TensorMaximality);
        c.max_size = 4;
        assert!(matches!(run_suite(&c), Err(SuiteError::CapExceeded { .. })));
        let mut c = cfg(SuiteName::Twovalued);
        c.tnorm = TNorm::Minimum;
        assert!(matches!(run_suite(&c), Err(SuiteError::Unsupported(_))));
    }

    #[test]
    fn check_kinds() {
        let docs = [
            r#"{"kind": "poset", "leq": [[1,1],[0,1]]}"#,
            r#"{"kind": "vcategory", "hom": [["1", "1/2"], ["0", "1"]]}"#,
            r#"{"kind": "distributor", "source": {"leq": [[1,1],[0,1]]}, "target": {"leq": [[1]]}, "relation": [[1],[0]]}"#,
            r#"{"kind": "generators", "leq": [[1,1],[0,1]], "functions": [["1","0"],["1","1"]]}"#,
        ];
        for d in docs {
            let r = check_instance("doc", &parse_instance(d).unwrap()).unwrap();
            assert_eq!(r.failed, 0, "{d}");
        }
    }
}
