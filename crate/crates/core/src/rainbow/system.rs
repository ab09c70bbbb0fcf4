//! The rainbow cycle system pipeline: reserve bowtie levels, build a path
//! system in what is left, match the reserved colours, then close each long
//! path through its own level.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::bowtie::Bowtie;
use super::close::{close_rainbow_path, CloseMode, Closing};
use super::matching::{greedy_rainbow_matching, matching_avoiding};
use super::partition::{check_dg_partition, extend, family_colours, family_minus, family_sets, family_vertices, BowtieSets};
use super::paths::{rainbow_path_system, RainbowPathSystem};
use super::types::{verify_cycle_system, CycleSystem, RainbowCycle};
use crate::error::{assertion, input, Error, Result};
use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum AbsorptionMode {
    /// Check δ_mon ≥ δ₀n and |φ| ≤ δ₀n/16, short-circuit to a matching when
    /// |φ| ≤ 2¹⁸δ₀⁻⁵, otherwise reserve ⌈4/δ₀⌉ levels with d = δn,
    /// g = δ²n/16 and δ = δ₀/2.
    Auto,
    /// Run the absorption branch with these parameters; the preconditions
    /// are only recorded.
    Force { d: usize, g: usize, levels: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleSystemParams {
    pub delta0: f64,
    pub mode: AbsorptionMode,
    /// Maximum number of reservation stages over all levels.
    pub budget: Option<usize>,
}

impl CycleSystemParams {
    pub fn auto(delta0: f64) -> Self {
        CycleSystemParams { delta0, mode: AbsorptionMode::Auto, budget: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Matching,
    Absorption,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StagedFailure {
    pub stage: String,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BowtieClass {
    /// 4|U₂| ≤ 3d.
    Small,
    /// The only child of a covered parent.
    CoveredChild,
    Rest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BowtieRecord {
    /// Stage i ≥ 1 of the level; the host is H^{i−1}.
    pub stage: usize,
    /// Position in the stage family.
    pub index: usize,
    pub bowtie: Bowtie,
    pub sets: BowtieSets,
    /// Record index of the bowtie of stage i − 1 whose U₂* holds W(B).
    pub parent: Option<usize>,
    pub class: BowtieClass,
    /// Replaced by its swap because its parent was not covered.
    pub swapped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: usize,
    pub bowties: Vec<usize>,
    /// |V*(H^i)|; zero means Case B.
    pub vstar_h: usize,
    pub properties: Vec<PropertyCheck>,
}

impl StageReport {
    pub fn failed_properties(&self) -> Vec<&str> {
        self.properties.iter().filter(|p| p.failure.is_some()).map(|p| p.name.as_str()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub level: usize,
    pub d: usize,
    pub g: usize,
    pub colours: BTreeSet<Colour>,
    pub vertices: BTreeSet<Vertex>,
    pub records: Vec<BowtieRecord>,
    pub stages: Vec<StageReport>,
    /// Targets recorded, never asserted: |φ|, |W| per stage below 384δ⁻³.
    pub size_target: f64,
    pub capped: bool,
    pub failure: Option<StagedFailure>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosingRecord {
    pub path: usize,
    pub level: usize,
    pub record: usize,
    pub closing: Closing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageLog {
    pub stage: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleSystemReport {
    pub n: usize,
    pub colours: usize,
    pub delta0: f64,
    pub branch: Branch,
    pub hypotheses: Vec<Hypothesis>,
    /// 2¹⁸δ₀⁻⁵.
    pub cycle_bound: f64,
    pub levels: Vec<LevelSummary>,
    pub path_system: Option<RainbowPathSystem>,
    pub closings: Vec<ClosingRecord>,
    pub system: Option<CycleSystem>,
    pub failure: Option<StagedFailure>,
    pub log: Vec<StageLog>,
}

impl CycleSystemReport {
    fn note(&mut self, stage: &str, detail: impl Into<String>) {
        self.log.push(StageLog { stage: stage.into(), detail: detail.into() });
    }

    fn fail(mut self, stage: &str, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        self.note(stage, format!("failed: {detail}"));
        self.failure = Some(StagedFailure { stage: stage.into(), detail });
        self
    }
}

/// A rainbow cycle system of `g` with colours exactly φ(G), or a report
/// naming the stage that failed. Input errors for bad δ₀ or (in Auto mode)
/// unmet preconditions; SizeGuard when the stage budget runs out.
pub fn rainbow_cycle_system(g: &EdgeColouredMultigraph, params: &CycleSystemParams) -> Result<CycleSystemReport> {
    let delta0 = params.delta0;
    if !(delta0 > 0.0 && delta0 <= 1.0) {
        return input(format!("δ₀ = {delta0} must lie in (0, 1]"));
    }
    let n = g.num_vertices();
    let phi = g.colours();
    let delta = g.degree_profile().delta_mon.unwrap_or(0);
    let nf = n as f64;
    let cycle_bound = 2f64.powi(18) / delta0.powi(5);
    let hypotheses = vec![
        Hypothesis {
            name: "min monochromatic degree".into(),
            holds: phi.is_empty() || delta as f64 >= delta0 * nf,
            detail: format!("δ_mon = {delta}, δ₀n = {:.2}", delta0 * nf),
        },
        Hypothesis {
            name: "few colours".into(),
            holds: phi.len() as f64 <= delta0 * nf / 16.0,
            detail: format!("|φ| = {}, δ₀n/16 = {:.2}", phi.len(), delta0 * nf / 16.0),
        },
        Hypothesis {
            name: "short-circuit".into(),
            holds: phi.len() as f64 <= cycle_bound,
            detail: format!("|φ| = {} against 2¹⁸δ₀⁻⁵ = {cycle_bound:.3e}", phi.len()),
        },
    ];
    let mut report = CycleSystemReport {
        n,
        colours: phi.len(),
        delta0,
        branch: Branch::Matching,
        hypotheses,
        cycle_bound,
        levels: Vec::new(),
        path_system: None,
        closings: Vec::new(),
        system: None,
        failure: None,
        log: Vec::new(),
    };
    let (d, gp, levels) = match params.mode {
        AbsorptionMode::Auto => {
            if let Some(h) = report.hypotheses[..2].iter().find(|h| !h.holds) {
                return input(format!("precondition fails: {}", h.detail));
            }
            if report.hypotheses[2].holds {
                let m = greedy_rainbow_matching(g)?;
                report.note("matching", format!("{} colours, each edge a degenerate cycle", m.len()));
                let sys = CycleSystem { cycles: vec![], degenerate_edges: m };
                if let Err(e) = verify_cycle_system(g, &sys, &phi) {
                    return assertion(format!("short-circuit matching fails verification: {e}"));
                }
                report.system = Some(sys);
                return Ok(report);
            }
            let delta = delta0 / 2.0;
            let d = (delta * nf).floor() as usize;
            let gp = ((delta * delta * nf / 16.0).floor() as usize).max(1);
            (d, gp, (4.0 / delta0).ceil() as usize)
        }
        AbsorptionMode::Force { d, g: gp, levels } => (d, gp, levels),
    };
    report.branch = Branch::Absorption;
    report.note("absorption", format!("d = {d}, g = {gp}, {levels} levels"));
    absorb(g, d, gp, levels, params.budget, report)
}

/// One reservation level with the graphs the closing step needs.
struct Level {
    summary: LevelSummary,
    /// H^{i−1} for stage i.
    hosts: Vec<EdgeColouredMultigraph>,
    /// 𝓑^i for stage i.
    families: Vec<Vec<Bowtie>>,
    g_star: Option<EdgeColouredMultigraph>,
}

fn absorb(g: &EdgeColouredMultigraph, d: usize, gp: usize, levels: usize, budget: Option<usize>, mut report: CycleSystemReport) -> Result<CycleSystemReport> {
    if d == 0 || gp == 0 {
        return input("d and g must be positive");
    }
    let phi = g.colours();
    let mut current = g.clone();
    let mut reserved: Vec<Level> = Vec::new();
    let mut stages_left = budget;
    for level in 0..levels {
        let lv = reserve(&current, level, d, gp, &mut stages_left)?;
        let s = &lv.summary;
        report.note(
            "reservation",
            format!(
                "level {level}: {} stages, {} bowties, {} colours, {} vertices reserved",
                s.stages.len(),
                s.records.len(),
                s.colours.len(),
                s.vertices.len()
            ),
        );
        for st in &s.stages {
            let bad = st.failed_properties();
            if !bad.is_empty() {
                report.note("reservation", format!("level {level} stage {}: properties {} fail", st.stage, bad.join(", ")));
            }
        }
        let failed = s.failure.clone();
        let next = lv.g_star.clone();
        report.levels.push(lv.summary.clone());
        reserved.push(lv);
        if let Some(f) = failed {
            return Ok(report.fail(&f.stage, f.detail));
        }
        current = next.expect("a finished level has G*");
    }

    // path system in G*
    let star_colours = current.colours();
    let sys = if star_colours.is_empty() {
        RainbowPathSystem { paths: vec![], merges: 0 }
    } else {
        let dm = current.degree_profile().delta_mon.unwrap_or(0);
        if dm < 4 * star_colours.len() {
            let msg = format!("δ_mon(G*) = {dm} is below 4|φ(G*)| = {}", 4 * star_colours.len());
            return Ok(report.fail("path system", msg));
        }
        match rainbow_path_system(&current, dm) {
            Ok(s) => s,
            Err(Error::Input(m)) => return Ok(report.fail("path system", m)),
            Err(e) => return Err(e),
        }
    };
    report.note("path system", format!("{} paths after {} merges in G*", sys.paths.len(), sys.merges));
    report.path_system = Some(sys.clone());
    let long: Vec<usize> = (0..sys.paths.len()).filter(|&i| sys.paths[i].vertices.len() >= 3).collect();
    if long.len() > reserved.len() {
        return Ok(report.fail("path system", format!("{} paths need closing but only {} levels are reserved", long.len(), reserved.len())));
    }

    // reserved colours plus any colour lost on the way are matched
    let w_all: BTreeSet<Vertex> = reserved.iter().flat_map(|l| l.summary.vertices.iter().copied()).collect();
    let mut avoid = w_all.clone();
    avoid.extend(sys.vertices());
    let to_match: Vec<Colour> = phi.iter().copied().filter(|c| !star_colours.contains(c)).collect();
    let lost: Vec<Colour> = to_match.iter().copied().filter(|c| !reserved.iter().any(|l| l.summary.colours.contains(c))).collect();
    if !lost.is_empty() {
        report.note("matching", format!("colours {lost:?} vanished without being reserved"));
    }
    let matching = match matching_avoiding(g, &to_match, &avoid) {
        Ok(m) => m,
        Err(c) => return Ok(report.fail("matching", format!("no edge of colour {c} outside the paths and reserved vertices"))),
    };
    report.note("matching", format!("{} reserved colours matched", matching.len()));

    // close long path number j through level j
    let mut cycles: Vec<RainbowCycle> = Vec::new();
    for (j, &pi) in long.iter().enumerate() {
        let p = &sys.paths[pi];
        let mut s: BTreeSet<Vertex> = reserved.iter().enumerate().filter(|&(l, _)| l != j).flat_map(|(_, l)| l.summary.vertices.iter().copied()).collect();
        for (q, other) in sys.paths.iter().enumerate() {
            if q != pi {
                s.extend(other.vertices.iter().copied());
            }
        }
        s.extend(matching.iter().flat_map(|&(a, b, _)| [a, b]));
        s.extend(cycles.iter().flat_map(|c| c.vertices.iter().copied()));
        let lv = &reserved[j];
        let interior: BTreeSet<Vertex> = p.interior().iter().copied().collect();
        let mut tried = Vec::new();
        let mut done = None;
        for (r, rec) in lv.summary.records.iter().enumerate() {
            if rec.class == BowtieClass::Rest || !interior.is_subset(&rec.sets.u2_star) {
                continue;
            }
            let host = family_minus(&lv.hosts[rec.stage - 1], &lv.families[rec.stage - 1], Some(rec.index));
            let mode = if rec.class == BowtieClass::Small { CloseMode::SharedEnd } else { CloseMode::ThroughCentre };
            match close_rainbow_path(&host, &rec.bowtie, p, &s, mode) {
                Ok(c) => {
                    done = Some((r, c));
                    break;
                }
                Err(Error::Input(m)) | Err(Error::Failure { detail: m, .. }) => tried.push(format!("bowtie {r}: {m}")),
                Err(e) => return Err(e),
            }
        }
        let Some((r, closing)) = done else {
            let detail = if tried.is_empty() {
                format!("no bowtie of level {j} in the small or covered classes has U₂* ⊇ int(P) for path {pi}")
            } else {
                tried.join("; ")
            };
            return Ok(report.fail("closing", detail));
        };
        report.note("closing", format!("path {pi} closed via level {j} bowtie {r} ({:?}), length {}", closing.mode, closing.cycle.vertices.len()));
        cycles.push(closing.cycle.clone());
        report.closings.push(ClosingRecord { path: pi, level: j, record: r, closing });
    }

    let used: BTreeSet<Colour> = cycles.iter().flat_map(|c| c.colours.iter().copied()).collect();
    let mut degenerate: Vec<(Vertex, Vertex, Colour)> = sys
        .paths
        .iter()
        .filter(|p| p.vertices.len() == 2)
        .map(|p| (p.vertices[0], p.vertices[1], p.colours[0]))
        .collect();
    degenerate.extend(matching.into_iter().filter(|(_, _, c)| !used.contains(c)));
    let out = CycleSystem { cycles, degenerate_edges: degenerate };
    if let Err(e) = verify_cycle_system(g, &out, &phi) {
        return assertion(format!("assembled cycle system fails verification: {e}"));
    }
    report.note("done", format!("{} cycles and {} single edges", out.cycles.len(), out.degenerate_edges.len()));
    report.system = Some(out);
    Ok(report)
}

/// The staged refinement on `g0`: partition, split off 𝓑^i, drop edges
/// between different U₂* sets, sort bowties into small / covered / rest and
/// recurse into the rest until H^i has no vertex seeing two colours.
fn reserve(g0: &EdgeColouredMultigraph, level: usize, d: usize, gp: usize, stages_left: &mut Option<usize>) -> Result<Level> {
    let n = g0.num_vertices();
    let dn = d as f64 / n.max(1) as f64;
    let mut lv = Level {
        summary: LevelSummary {
            level,
            d,
            g: gp,
            colours: BTreeSet::new(),
            vertices: BTreeSet::new(),
            records: Vec::new(),
            stages: Vec::new(),
            size_target: 384.0 / dn.powi(3),
            capped: false,
            failure: None,
        },
        hosts: vec![g0.clone()],
        families: Vec::new(),
        g_star: None,
    };
    let fail = |mut lv: Level, detail: String| -> Result<Level> {
        lv.summary.failure = Some(StagedFailure { stage: "reservation".into(), detail });
        Ok(lv)
    };
    let mut threshold = d.div_ceil(2);
    let mut fam = match extend(g0, threshold, gp, Vec::new()) {
        Ok((f, _)) => f,
        Err(Error::Failure { detail, .. }) => return fail(lv, format!("level {level} stage 1: {detail}")),
        Err(e) => return Err(e),
    };
    let mut swapped = vec![false; fam.len()];
    let mut g_prev = g0.clone();
    let mut prev: Vec<usize> = Vec::new();
    let mut i = 1;
    loop {
        if let Some(left) = stages_left {
            if *left == 0 {
                return Err(Error::SizeGuard(format!("stage budget exhausted at level {level} stage {i}")));
            }
            *left -= 1;
        }
        let h_prev = lv.hosts.last().expect("H^0").clone();
        let sets = family_sets(&h_prev, &fam)?;
        let recs = &mut lv.summary.records;
        let base = recs.len();
        for (j, b) in fam.iter().enumerate() {
            let wb = b.vertices();
            let parent = prev.iter().copied().find(|&r| wb.is_subset(&recs[r].sets.u2_star));
            let class = if 4 * sets[j].u2.len() <= 3 * d { BowtieClass::Small } else { BowtieClass::Rest };
            recs.push(BowtieRecord { stage: i, index: j, bowtie: b.clone(), sets: sets[j].clone(), parent, class, swapped: swapped[j] });
        }
        let cur: Vec<usize> = (base..recs.len()).collect();
        for &p in &prev {
            let kids: Vec<usize> = cur.iter().copied().filter(|&r| recs[r].parent == Some(p)).collect();
            if let [k] = kids[..] {
                if recs[k].class == BowtieClass::Rest && recs[k].sets.u1_star == recs[k].sets.u2_star {
                    recs[k].class = BowtieClass::CoveredChild;
                }
            }
        }
        lv.summary.colours.extend(family_colours(&fam));
        lv.summary.vertices.extend(family_vertices(&fam));

        let j_graph = family_minus(&g_prev, &fam, None);
        let mut owner = vec![usize::MAX; g0.n()];
        for &r in &cur {
            for &x in &recs[r].sets.u2_star {
                owner[x] = r;
            }
        }
        let gi = j_graph.filter_edges(|a, b, _| owner[a] == usize::MAX || owner[b] == usize::MAX || owner[a] == owner[b]);
        let gi_vstar = gi.degree_profile().vstar;
        let mut keep = vec![false; g0.n()];
        for v in gi.vertices() {
            keep[v] = !gi_vstar[v];
        }
        for &r in cur.iter().filter(|&&r| recs[r].class == BowtieClass::Rest) {
            for &x in &recs[r].sets.u2_star {
                keep[x] = gi.contains(x);
            }
        }
        let hi = gi.induced(&keep);
        let properties = stage_properties(&StageView { i, n, d, gp, threshold, h_prev: &h_prev, g_prev: &g_prev, gi: &gi, hi: &hi, fam: &fam, prev: &prev, cur: &cur, recs }, lv.summary.size_target);
        let vstar_h = hi.vstar().len();
        lv.summary.stages.push(StageReport { stage: i, bowties: cur.clone(), vstar_h, properties });
        lv.families.push(fam.clone());
        if vstar_h == 0 {
            lv.g_star = Some(gi);
            return Ok(lv);
        }
        if i >= n.max(1) {
            lv.summary.capped = true;
            return fail(lv, format!("level {level}: iteration cap n = {n} reached"));
        }

        // Case A: partition H^i, swap lone children of uncovered parents
        threshold = d.div_ceil(4);
        let mut next = match extend(&hi, threshold, gp, Vec::new()) {
            Ok((f, _)) => f,
            Err(Error::Failure { detail, .. }) => return fail(lv, format!("level {level} stage {}: {detail}", i + 1)),
            Err(e) => return Err(e),
        };
        let next_sets = family_sets(&hi, &next)?;
        let mut flips = vec![false; next.len()];
        for &r in &cur {
            let kids: Vec<usize> = (0..next.len()).filter(|&k| next[k].vertices().is_subset(&lv.summary.records[r].sets.u2_star)).collect();
            if let [k] = kids[..] {
                if next_sets[k].u1_star != next_sets[k].u2_star {
                    next[k] = next[k].swapped();
                    flips[k] = true;
                }
            }
        }
        if flips.iter().any(|&f| f) {
            next = match extend(&hi, threshold, gp, next) {
                Ok((f, _)) => f,
                Err(Error::Failure { detail, .. }) => return fail(lv, format!("level {level} stage {} after swapping: {detail}", i + 1)),
                Err(e) => return Err(e),
            };
            flips.resize(next.len(), false);
        }
        fam = next;
        swapped = flips;
        lv.hosts.push(hi);
        g_prev = gi;
        prev = cur;
        i += 1;
    }
}

struct StageView<'a> {
    i: usize,
    n: usize,
    d: usize,
    gp: usize,
    threshold: usize,
    h_prev: &'a EdgeColouredMultigraph,
    g_prev: &'a EdgeColouredMultigraph,
    gi: &'a EdgeColouredMultigraph,
    hi: &'a EdgeColouredMultigraph,
    fam: &'a [Bowtie],
    prev: &'a [usize],
    cur: &'a [usize],
    recs: &'a [BowtieRecord],
}

/// Properties (i)–(x) of stage i, each with its first failure.
fn stage_properties(s: &StageView, size_target: f64) -> Vec<PropertyCheck> {
    let (i, n, d, gp) = (s.i, s.n as f64, s.d as f64, s.gp as f64);
    let recs = s.recs;
    let slack = d - i as f64 * (gp + 12.0 * n * n / (gp * d));
    let mut out = Vec::new();
    let mut put = |name: &str, failure: Option<String>| out.push(PropertyCheck { name: name.into(), failure });

    let p1 = match check_dg_partition(s.h_prev, s.fam, s.threshold, s.gp) {
        Ok(rep) if !rep.full() => Some(rep.failures().join("; ")),
        Ok(_) => {
            let (c, w) = (family_colours(s.fam).len(), family_vertices(s.fam).len());
            (c as f64 >= size_target || w as f64 >= size_target).then(|| format!("|φ(𝓑)| = {c}, |W(𝓑)| = {w} against 384δ⁻³ = {size_target:.1}"))
        }
        Err(e) => Some(e.to_string()),
    };
    put("(i)", p1);

    let mut p2 = None;
    let mut p3 = None;
    if i >= 2 {
        for &p in s.prev {
            let kids: Vec<usize> = s.cur.iter().copied().filter(|&r| recs[r].parent == Some(p)).collect();
            if let [k] = kids[..] {
                if recs[k].sets.u1_star != recs[k].sets.u2_star {
                    p2.get_or_insert(format!("bowtie {p} has one child {k}, which does not cover it"));
                }
            }
        }
        for &r in s.cur {
            match recs[r].parent {
                None => {
                    p3.get_or_insert(format!("bowtie {r} lies in no U₂* of the previous stage"));
                }
                Some(p) if recs[p].class != BowtieClass::Rest => {
                    p3.get_or_insert(format!("bowtie {r} has parent {p} outside the rest class"));
                }
                _ => {}
            }
        }
    }
    put("(ii)", p2);
    put("(iii)", p3);

    let p4 = s
        .cur
        .iter()
        .find(|&&r| recs[r].class == BowtieClass::Rest && 4 * recs[r].sets.u2_star.len() + i * s.d > 4 * s.n)
        .map(|&r| format!("|U₂*| = {} for bowtie {r} exceeds n − {i}d/4", recs[r].sets.u2_star.len()));
    put("(iv)", p4);

    let dm = s.gi.degree_profile().delta_mon;
    put("(v)", dm.filter(|&x| (x as f64) < slack).map(|x| format!("δ_mon(G^i) = {x} < {slack:.2}")));
    let ds = s.hi.degree_profile().delta_star_mon;
    put("(vi)", ds.filter(|&x| (x as f64) < slack).map(|x| format!("δ*_mon(H^i) = {x} < {slack:.2}")));

    let rest: BTreeSet<Vertex> = s.cur.iter().filter(|&&r| recs[r].class == BowtieClass::Rest).flat_map(|&r| recs[r].sets.u2_star.iter().copied()).collect();
    put("(vii)", s.hi.vstar().into_iter().find(|x| !rest.contains(x)).map(|x| format!("{x} ∈ V*(H^i) lies in no rest U₂*")));

    let want: BTreeSet<Colour> = s.g_prev.colours().difference(&family_colours(s.fam)).copied().collect();
    let got = s.gi.colours();
    put("(viii)", (got != want).then(|| format!("φ(G^i) misses {:?}", want.difference(&got).collect::<Vec<_>>())));

    let gi_vstar = s.gi.degree_profile().vstar;
    let mut p9 = None;
    'p9: for &r in s.cur {
        let u = &recs[r].sets.u2_star;
        for &x in u {
            if !s.gi.contains(x) {
                continue;
            }
            for nb in s.gi.colour_nbrs(x).values() {
                if let Some(&y) = nb.iter().find(|&&y| gi_vstar[y] && !u.contains(&y)) {
                    p9 = Some(format!("edge {x}{y} leaves U₂* of bowtie {r}"));
                    break 'p9;
                }
            }
        }
    }
    put("(ix)", p9);

    let mut p10 = None;
    for (j, b) in s.fam.iter().enumerate() {
        match super::bowtie::bowtie_is_g_maximal(&family_minus(s.g_prev, s.fam, Some(j)), b, s.gp) {
            Ok(true) => {}
            Ok(false) => {
                p10.get_or_insert(format!("bowtie {j} of the stage is not g-maximal in G^(i−1)"));
            }
            Err(e) => {
                p10.get_or_insert(e.to_string());
            }
        }
    }
    put("(x)", p10);
    out
}
