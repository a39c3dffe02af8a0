//! The group descriptor mini-language.
//!
//! ```text
//! spec    := "table:" path | product
//! product := factor ("x" factor)*
//! factor  := base ("^" int)?
//! base    := "Z" int | "Q8" | "D" int | "S" int
//! ```
//!
//! `Zk^m` is the direct power with generators `a, b, ...`; any other power
//! is an iterated direct product. `Dk` is dihedral of order `2k`.

use std::path::Path;

use super::Group;
use crate::error::GroupError;

pub fn parse_group(spec: &str) -> Result<Group, GroupError> {
    let spec = spec.trim();
    let err = |reason: &str| GroupError::Parse {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    if let Some(path) = spec.strip_prefix("table:") {
        return Group::from_table_file(Path::new(path));
    }
    if spec.is_empty() {
        return Err(err("empty descriptor"));
    }
    let mut group: Option<Group> = None;
    for factor in spec.split('x') {
        let g = parse_factor(factor).map_err(|reason| err(&reason))?;
        group = Some(match group {
            None => g,
            Some(acc) => Group::direct_product(&acc, &g)?,
        });
    }
    let mut group = group.expect("split yields at least one factor");
    group.spec = spec.to_string();
    Ok(group)
}

fn parse_factor(factor: &str) -> Result<Group, String> {
    let (base, exp) = match factor.split_once('^') {
        Some((b, e)) => (b, parse_int(e)?),
        None => (factor, 1),
    };
    if exp == 0 {
        return Err("exponent must be positive".into());
    }
    if let Some(k) = base.strip_prefix('Z') {
        return Group::cyclic_power(parse_int(k)?, exp).map_err(|e| e.to_string());
    }
    let g = if base == "Q8" {
        Group::quaternion()
    } else if let Some(k) = base.strip_prefix('D') {
        Group::dihedral(parse_int(k)?).map_err(|e| e.to_string())?
    } else if let Some(k) = base.strip_prefix('S') {
        Group::symmetric(parse_int(k)?).map_err(|e| e.to_string())?
    } else {
        return Err(format!("unknown group `{base}`"));
    };
    let mut acc = g.clone();
    for _ in 1..exp {
        acc = Group::direct_product(&acc, &g).map_err(|e| e.to_string())?;
    }
    Ok(acc)
}

fn parse_int(s: &str) -> Result<usize, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected a positive integer, found `{s}`"));
    }
    s.parse().map_err(|_| format!("integer `{s}` out of range"))
}
