//! Named experiment runners with machine-readable reports.
//!
//! Every experiment is fully determined by its spec (name, parameters,
//! seed): re-running with the same spec reproduces the report body byte for
//! byte. Exact rationals are rendered as `p/q` strings in the machine
//! section; expected values carry their provenance (a known closed form, a
//! definition, or a value derived by an exact oracle in the same run).

use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::feasibility::{
    check_row_constraints, fractional_chromatic_index, fractional_chromatic_number_lp,
    DemandVector,
};
use crate::gen;
use crate::graph::Graph;
use crate::interference::{primary_conflict_graph, protocol_conflict_graph, ConflictGraph};
use crate::rational::{format_rational, rat, rat_int, Rat};

/// The experiments this crate can reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentName {
    OddCycleSchedule,
    BoundTightness,
    SigmaLineSweep,
    RowWorstCase,
    OracleCrosscheck,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 5] = [
        ExperimentName::OddCycleSchedule,
        ExperimentName::BoundTightness,
        ExperimentName::SigmaLineSweep,
        ExperimentName::RowWorstCase,
        ExperimentName::OracleCrosscheck,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentName::OddCycleSchedule => "odd-cycle-schedule",
            ExperimentName::BoundTightness => "bound-tightness",
            ExperimentName::SigmaLineSweep => "sigma-line-sweep",
            ExperimentName::RowWorstCase => "row-worst-case",
            ExperimentName::OracleCrosscheck => "oracle-crosscheck",
        }
    }
}

impl fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ExperimentName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|name| name.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown experiment {s:?}")))
    }
}

/// Parameters of one experiment run. The seed fully determines every
/// generated instance.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSpec {
    pub name: ExperimentName,
    pub seed: u64,
    /// Cycle lengths (odd-cycle-schedule).
    pub n_values: Vec<usize>,
    /// Degrees of centralization (bound-tightness).
    pub d_values: Vec<usize>,
    /// Number of random instances (sweeps and cross-checks).
    pub instances: usize,
}

impl ExperimentSpec {
    pub fn new(name: ExperimentName) -> Self {
        let (n_values, d_values, instances) = match name {
            ExperimentName::OddCycleSchedule => (vec![5, 7, 9, 11], vec![], 0),
            ExperimentName::BoundTightness => (vec![], vec![1, 2, 3], 0),
            ExperimentName::SigmaLineSweep => (vec![], vec![], 300),
            ExperimentName::RowWorstCase => (vec![], vec![], 200),
            ExperimentName::OracleCrosscheck => (vec![], vec![], 200),
        };
        ExperimentSpec {
            name,
            seed: 0,
            n_values,
            d_values,
            instances,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Where an expected value comes from: a known closed form, a definition,
/// or an exact oracle evaluated in the same run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Definition,
    Oracle,
}

/// One checked value.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub label: String,
    pub computed: String,
    pub expected: String,
    pub provenance: Provenance,
    pub pass: bool,
}

impl CaseReport {
    fn eq_case(
        label: impl Into<String>,
        computed: &Rat,
        expected: &Rat,
        provenance: Provenance,
    ) -> Self {
        CaseReport {
            label: label.into(),
            computed: format_rational(computed),
            expected: format_rational(expected),
            provenance,
            pass: computed == expected,
        }
    }
}

/// Machine-readable experiment outcome; see [`Report::to_json`] for the
/// machine rendering and [`Report::human_table`] for the console table.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub spec: ExperimentSpec,
    pub cases: Vec<CaseReport>,
    pub all_pass: bool,
}

impl Report {
    fn new(spec: ExperimentSpec, cases: Vec<CaseReport>) -> Self {
        let all_pass = cases.iter().all(|c| c.pass);
        Report {
            spec,
            cases,
            all_pass,
        }
    }

    /// Deterministic JSON body (no timestamps; `p/q` strings throughout).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn human_table(&self) -> String {
        let mut label_w = "case".len();
        let mut computed_w = "computed".len();
        let mut expected_w = "expected".len();
        for c in &self.cases {
            label_w = label_w.max(c.label.len());
            computed_w = computed_w.max(c.computed.len());
            expected_w = expected_w.max(c.expected.len());
        }
        let mut out = format!(
            "{:<label_w$}  {:<computed_w$}  {:<expected_w$}  {:<11}  result\n",
            "case", "computed", "expected", "provenance"
        );
        for c in &self.cases {
            out.push_str(&format!(
                "{:<label_w$}  {:<computed_w$}  {:<expected_w$}  {:<11}  {}\n",
                c.label,
                c.computed,
                c.expected,
                match c.provenance {
                    Provenance::ClosedForm => "closed-form",
                    Provenance::Definition => "definition",
                    Provenance::Oracle => "oracle",
                },
                if c.pass { "PASS" } else { "FAIL" }
            ));
        }
        let passed = self.cases.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "{} {}: {passed}/{} checks pass\n",
            if self.all_pass { "PASS" } else { "FAIL" },
            self.spec.name,
            self.cases.len()
        ));
        out
    }
}

fn subseed(seed: u64, stream: u64, index: u64) -> u64 {
    // splitmix64 over a stream-tagged input.
    let mut z = seed ^ stream.wrapping_mul(0xbf58_476d_1ce4_e5b9) ^ index;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs an experiment to completion and assembles its report.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report, Error> {
    let cases = match spec.name {
        ExperimentName::OddCycleSchedule => odd_cycle_schedule(spec)?,
        ExperimentName::BoundTightness => bound_tightness(spec)?,
        ExperimentName::SigmaLineSweep => sigma_line_sweep(spec)?,
        ExperimentName::RowWorstCase => row_worst_case(spec)?,
        ExperimentName::OracleCrosscheck => oracle_crosscheck(spec)?,
    };
    Ok(Report::new(spec.clone(), cases))
}

/// Odd cycle with unit demands: the optimal duration is `2n/(n-1)`.
fn odd_cycle_schedule(spec: &ExperimentSpec) -> Result<Vec<CaseReport>, Error> {
    let mut cases = Vec::new();
    for &n in &spec.n_values {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "odd-cycle-schedule needs odd n >= 3, got {n}"
            )));
        }
        let g = gen::cycle(n)?;
        let tau = DemandVector::uniform(&g, rat_int(1))?;
        let computed = fractional_chromatic_index(&g, &tau)?;
        let expected = rat(2 * n as i64, n as i64 - 1);
        cases.push(CaseReport::eq_case(
            format!("C_{n} unit demand duration"),
            &computed,
            &expected,
            Provenance::ClosedForm,
        ));
    }
    Ok(cases)
}

/// On `C_{2d+3}` with uniform demand 1/2, distance-d views see exactly 1
/// while the true duration is `(2d+3)/(2d+2)`: the guarantee factor is
/// attained.
fn bound_tightness(spec: &ExperimentSpec) -> Result<Vec<CaseReport>, Error> {
    let mut cases = Vec::new();
    for &d in &spec.d_values {
        if d == 0 {
            return Err(Error::InvalidParameter(
                "bound-tightness needs d >= 1".into(),
            ));
        }
        let n = 2 * d + 3;
        let g = gen::cycle(n)?;
        let tau = DemandVector::uniform(&g, rat(1, 2))?;
        let (local, _) = crate::distalgo::global_local_bound(&g, &tau, d)?;
        let exact = fractional_chromatic_index(&g, &tau)?;
        let expected_exact = rat(n as i64, n as i64 - 1);
        cases.push(CaseReport::eq_case(
            format!("C_{n} d={d} local bound"),
            &local,
            &rat_int(1),
            Provenance::Oracle,
        ));
        cases.push(CaseReport::eq_case(
            format!("C_{n} d={d} exact duration"),
            &exact,
            &expected_exact,
            Provenance::ClosedForm,
        ));
        let ratio = &exact / &local;
        cases.push(CaseReport::eq_case(
            format!("C_{n} d={d} ratio"),
            &ratio,
            &crate::distalgo::alpha(d),
            Provenance::ClosedForm,
        ));
    }
    Ok(cases)
}

/// Random line networks satisfying the spacing constraint: the conflict
/// graph's induced star number never exceeds 3, and the 8-node witness
/// network attains 3.
fn sigma_line_sweep(spec: &ExperimentSpec) -> Result<Vec<CaseReport>, Error> {
    let mut cases = Vec::new();
    for i in 0..spec.instances {
        let n = 8 + (i % 7);
        let net = gen::random_line_network(n, subseed(spec.seed, 1, i as u64))?;
        let gc = protocol_conflict_graph(&net);
        let (sigma, _) = gc.graph().induced_star_number()?;
        cases.push(CaseReport {
            label: format!("instance {i} (n={n}, tx={})", net.transmissions().len()),
            computed: sigma.to_string(),
            expected: "<= 3".into(),
            provenance: Provenance::ClosedForm,
            pass: sigma <= 3,
        });
    }
    let claw = claw_witness_network()?;
    let gc = protocol_conflict_graph(&claw);
    let (sigma, _) = gc.graph().induced_star_number()?;
    cases.push(CaseReport {
        label: "claw witness network sigma".into(),
        computed: sigma.to_string(),
        expected: "3".into(),
        provenance: Provenance::ClosedForm,
        pass: sigma == 3,
    });
    Ok(cases)
}

/// The 8-node line network whose protocol conflict graph contains a claw.
pub fn claw_witness_network() -> Result<crate::interference::LineNetwork, Error> {
    use crate::interference::{LineNetwork, Transmission};
    let positions = ["0", "0.3", "0.5", "1.4", "1.5", "1.6", "2.49", "2.51"]
        .iter()
        .map(|s| crate::rational::parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    let transmissions = vec![
        Transmission::unicast(2, 4)?,
        Transmission::unicast(0, 1)?,
        Transmission::unicast(3, 5)?,
        Transmission::unicast(6, 7)?,
    ];
    LineNetwork::new(positions, rat_int(1), transmissions)
}

/// The row estimate against the exact duration: ratio 3 on the star
/// witness, and never beyond the conflict graph's induced star number on
/// random feasible demands.
fn row_worst_case(spec: &ExperimentSpec) -> Result<Vec<CaseReport>, Error> {
    let mut cases = Vec::new();

    let star = ConflictGraph::from_graph(gen::star(4)?);
    let tau = vec![rat_int(0), rat_int(1), rat_int(1), rat_int(1)];
    let row = check_row_constraints(&star, &tau, &rat_int(1))?.bound_value;
    let exact = fractional_chromatic_number_lp(&star, &tau)?.value;
    cases.push(CaseReport::eq_case(
        "star conflict graph row estimate",
        &row,
        &rat_int(3),
        Provenance::ClosedForm,
    ));
    cases.push(CaseReport::eq_case(
        "star conflict graph exact duration",
        &exact,
        &rat_int(1),
        Provenance::Oracle,
    ));
    cases.push(CaseReport::eq_case(
        "star conflict graph ratio",
        &(&row / &exact),
        &rat_int(3),
        Provenance::ClosedForm,
    ));

    for i in 0..spec.instances {
        let n = 4 + (i % 5);
        let seed = subseed(spec.seed, 2, i as u64);
        let gc_graph = gen::random_graph_bounded(n, &rat(1, 2), seed, 16)?;
        let tau = gen::random_feasible_vertex_demands(&gc_graph, seed ^ 0x5151)?;
        let (sigma, _) = gc_graph.induced_star_number()?;
        let gc = ConflictGraph::from_graph(gc_graph);
        let row = check_row_constraints(&gc, &tau, &rat_int(1))?.bound_value;
        let exact = fractional_chromatic_number_lp(&gc, &tau)?.value;
        let ratio = &row / &exact;
        cases.push(CaseReport {
            label: format!("instance {i} (n={n})"),
            computed: format_rational(&ratio),
            expected: format!("<= {sigma}"),
            provenance: Provenance::ClosedForm,
            pass: ratio <= rat_int(sigma as i64),
        });
    }
    Ok(cases)
}

/// The two duration oracles (closed form and exact LP) agree on the whole
/// small-graph catalogue and on random weighted instances.
fn oracle_crosscheck(spec: &ExperimentSpec) -> Result<Vec<CaseReport>, Error> {
    let mut cases = Vec::new();
    for (idx, g) in gen::connected_graphs_up_to_iso(6).iter().enumerate() {
        let tau = DemandVector::uniform(g, rat_int(1))?;
        cases.push(crosscheck_case(
            format!("catalogue {idx} (n={}, m={})", g.node_count(), g.edge_count()),
            g,
            &tau,
        )?);
    }
    for i in 0..spec.instances {
        let seed = subseed(spec.seed, 3, i as u64);
        let n = 2 + (i % 6); // 2..=7 nodes
        let g = gen::random_graph_bounded(n, &rat(1, 2), seed, 20)?;
        let tau = gen::random_demand_vector(&g, seed ^ 0xd00d);
        cases.push(crosscheck_case(
            format!("random {i} (n={n}, m={})", g.edge_count()),
            &g,
            &tau,
        )?);
    }
    Ok(cases)
}

fn crosscheck_case(label: String, g: &Graph, tau: &DemandVector) -> Result<CaseReport, Error> {
    let closed_form = fractional_chromatic_index(g, tau)?;
    let gc = primary_conflict_graph(g);
    let lp = fractional_chromatic_number_lp(&gc, &gc.vertex_demands(tau)?)?;
    Ok(CaseReport::eq_case(
        label,
        &closed_form,
        &lp.value,
        Provenance::Oracle,
    ))
}
