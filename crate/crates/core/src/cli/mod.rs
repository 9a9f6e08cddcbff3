//! Configuration ingestion, task dispatch and reporting behind the
//! `weylindex` executable.

mod config;
mod render;
mod run;

pub use config::{
    parse_config, parse_rational, ConfigError, Job, JobConfig, LatticeConfig, MethodChoice, Number,
    RepresentationConfig,
};
pub use render::{render, structured, Format, StructuredOutput, StructuredReport, StructuredValue, SCHEMA_VERSION};
pub use run::{run, RunError};

use crate::indices::{IndexError, Prepared};
use crate::polytope::LatticeSpec;
use crate::quadrature::Method;
use crate::rootsys::{build_root_system, CartanLetter, RootSystem, WeightVector};

/// Exit status of the executable.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VALIDATION: i32 = 1;
    pub const COMPUTATION: i32 = 2;
    pub const CROSS_CHECK: i32 = 3;
}

pub fn exit_code(e: &IndexError) -> i32 {
    match e {
        _ if e.is_cross_check_failure() => exit::CROSS_CHECK,
        IndexError::NoWeights
        | IndexError::WeightLength { .. }
        | IndexError::OutsideLattice { .. }
        | IndexError::ChernOutOfRange { .. }
        | IndexError::ListCount { .. } => exit::VALIDATION,
        _ => exit::COMPUTATION,
    }
}

struct Case {
    name: String,
    rs: RootSystem,
    lattice: LatticeSpec,
    highest: WeightVector,
}

fn selftest_cases() -> Vec<Case> {
    use CartanLetter::*;
    let mut cases = Vec::new();
    let a1 = build_root_system(&[(A, 1)], 0).expect("valid type");
    for m in 1..=3 {
        cases.push(Case {
            name: format!("A1 simply connected, highest weight {m}"),
            lattice: LatticeSpec::simply_connected(1),
            highest: WeightVector::from_ints(&[m]),
            rs: a1.clone(),
        });
    }
    let a1a1 = build_root_system(&[(A, 1), (A, 1)], 0).expect("valid type");
    cases.push(Case {
        name: "A1xA1 simply connected, highest weight (1,1)".into(),
        lattice: LatticeSpec::simply_connected(2),
        highest: WeightVector::from_ints(&[1, 1]),
        rs: a1a1,
    });
    let a2 = build_root_system(&[(A, 2)], 0).expect("valid type");
    cases.push(Case {
        name: "A2 adjoint, highest weight (1,1)".into(),
        lattice: LatticeSpec::adjoint(&a2),
        highest: WeightVector::from_ints(&[1, 1]),
        rs: a2,
    });
    let b2 = build_root_system(&[(B, 2)], 0).expect("valid type");
    cases.push(Case {
        name: "B2 adjoint, highest weight (2,2)".into(),
        lattice: LatticeSpec::adjoint(&b2),
        highest: WeightVector::from_ints(&[2, 2]),
        rs: b2,
    });
    cases
}

/// Compares both integration methods and the flag path for every Chern
/// index on a fixed set of regular inputs. Returns one line per case.
pub fn selftest() -> Result<Vec<String>, (String, IndexError)> {
    let mut lines = Vec::new();
    for case in selftest_cases() {
        let fail = |e| (case.name.clone(), e);
        let p = Prepared::new(&case.rs, &case.lattice, &case.rs.weyl_orbit(&case.highest)).map_err(fail)?;
        let mut values = Vec::new();
        for i in 0..=p.n() - p.k() {
            let direct = p.chern_integral(i, &[Method::Monomial, Method::Polarization]).map_err(fail)?;
            let flags = p.chern_flag_sum(i).map_err(fail)?;
            if direct != flags {
                return Err(fail(IndexError::PathMismatch {
                    quantity: format!("chern:{i}"),
                    left_path: "integral".into(),
                    left: direct,
                    right_path: "flags".into(),
                    right: flags,
                }));
            }
            values.push(direct.to_string());
        }
        lines.push(format!("ok  {}: chern indices [{}]", case.name, values.join(", ")));
    }
    Ok(lines)
}
