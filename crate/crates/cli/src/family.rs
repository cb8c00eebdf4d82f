//! Family strings accepted on the command line: everything the core
//! `FamilySpec` grammar knows, plus `ktree:n=..,t=..[,seed=..]` for
//! seeded random partial k-trees, plus `m`/`m^k` size placeholders used
//! by sweeps.

use boxtimes_core::decomp::{random_ktree, TreeDecomposition};
use boxtimes_core::families::{FamilySpec, DEFAULT_VERTEX_CAP};
use boxtimes_core::graph::Graph;

use crate::CliError;

#[derive(Clone, Debug)]
pub enum ExtFamily {
    Std(FamilySpec),
    Ktree { n: usize, t: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct BuiltExt {
    pub graph: Graph,
    pub decomposition: Option<TreeDecomposition>,
}

impl ExtFamily {
    /// `default_seed` fills in `ktree` specs that leave the seed out.
    pub fn parse(s: &str, default_seed: u64) -> Result<Self, CliError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("ktree:") {
            let (mut n, mut t, mut seed) = (None, None, default_seed);
            for item in rest.split(',') {
                let (key, value) = item
                    .split_once('=')
                    .ok_or_else(|| CliError::input(format!("bad ktree parameter {item:?}")))?;
                let parse = |v: &str| {
                    v.parse::<u64>()
                        .map_err(|_| CliError::input(format!("bad ktree value {v:?}")))
                };
                match key.trim() {
                    "n" => n = Some(parse(value.trim())? as usize),
                    "t" => t = Some(parse(value.trim())? as usize),
                    "seed" => seed = parse(value.trim())?,
                    other => {
                        return Err(CliError::input(format!("unknown ktree parameter {other:?}")))
                    }
                }
            }
            let n = n.ok_or_else(|| CliError::input("ktree needs n="))?;
            let t = t.ok_or_else(|| CliError::input("ktree needs t="))?;
            return Ok(ExtFamily::Ktree { n, t, seed });
        }
        FamilySpec::parse(s)
            .map(ExtFamily::Std)
            .map_err(|e| CliError::input(format!("cannot parse family {s:?}: {e}")))
    }

    pub fn vertex_count(&self) -> u128 {
        match self {
            ExtFamily::Std(spec) => spec.vertex_count(),
            ExtFamily::Ktree { n, .. } => *n as u128,
        }
    }

    pub fn build(&self, cap: usize) -> Result<BuiltExt, CliError> {
        match self {
            ExtFamily::Std(spec) => {
                let built = spec
                    .build_capped(cap)
                    .map_err(|e| CliError::input(format!("cannot build family: {e}")))?;
                Ok(BuiltExt { graph: built.graph, decomposition: built.decomposition })
            }
            ExtFamily::Ktree { n, t, seed } => {
                if *n > cap {
                    return Err(CliError::input(format!(
                        "family would have {n} vertices, cap is {cap}"
                    )));
                }
                let (graph, decomposition) = random_ktree(*n, *t, *seed)
                    .map_err(|e| CliError::input(format!("cannot build ktree: {e}")))?;
                Ok(BuiltExt { graph, decomposition: Some(decomposition) })
            }
        }
    }
}

pub fn default_cap() -> usize {
    DEFAULT_VERTEX_CAP
}

/// Parse a factor pair, enforcing the cap on the product size before
/// anything is built.
pub fn build_pair(
    f1: &str,
    f2: &str,
    seed: u64,
    cap: usize,
) -> Result<(BuiltExt, BuiltExt), CliError> {
    let e1 = ExtFamily::parse(f1, seed)?;
    let e2 = ExtFamily::parse(f2, seed.wrapping_add(1))?;
    let total = e1.vertex_count().saturating_mul(e2.vertex_count());
    if total > cap as u128 {
        return Err(CliError::input(format!(
            "product would have {total} vertices, cap is {cap}"
        )));
    }
    Ok((e1.build(cap)?, e2.build(cap)?))
}

/// Replace standalone `m` / `m^k` tokens in a family template with the
/// value of `m` (raised to `k`). Letters inside family names are left
/// alone.
pub fn substitute_size(template: &str, m: u64) -> Result<String, CliError> {
    let chars: Vec<char> = template.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let prev_word = i > 0
            && chars[i - 1] != 'x'
            && (chars[i - 1].is_ascii_alphanumeric() || chars[i - 1] == '_');
        if c == 'm' && !prev_word {
            let mut j = i + 1;
            let mut power = 1u32;
            if j < chars.len() && chars[j] == '^' {
                let start = j + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    return Err(CliError::input(format!("dangling exponent in {template:?}")));
                }
                power = chars[start..end].iter().collect::<String>().parse().unwrap();
                j = end;
            }
            // `m` glued to a word is not a placeholder; `x` stays a
            // boundary because it separates framed-grid dimensions
            let glued = j < chars.len()
                && chars[j] != 'x'
                && (chars[j].is_ascii_alphanumeric() || chars[j] == '_');
            if glued {
                out.push(c);
                i += 1;
                continue;
            }
            let value = m
                .checked_pow(power)
                .ok_or_else(|| CliError::input(format!("size {m}^{power} overflows")))?;
            out.push_str(&value.to_string());
            i = j;
        } else {
            out.push(c);
            i += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitutes_only_placeholders() {
        assert_eq!(substitute_size("fan:m^2", 9).unwrap(), "fan:81");
        assert_eq!(substitute_size("path:m", 7).unwrap(), "path:7");
        assert_eq!(substitute_size("complete:4", 3).unwrap(), "complete:4");
        assert_eq!(substitute_size("framed:mx3", 5).unwrap(), "framed:5x3");
        assert_eq!(substitute_size("framed:mxm", 5).unwrap(), "framed:5x5");
        assert_eq!(substitute_size("ktree:n=m,t=2", 30).unwrap(), "ktree:n=30,t=2");
        assert_eq!(substitute_size("cone:m,fan:m^3", 2).unwrap(), "cone:2,fan:8");
        assert!(substitute_size("fan:m^", 2).is_err());
    }

    #[test]
    fn ktree_family_parses_and_builds() {
        let fam = ExtFamily::parse("ktree:n=12,t=2,seed=5", 0).unwrap();
        let built = fam.build(1000).unwrap();
        assert_eq!(built.graph.vertex_count(), 12);
        assert!(built.decomposition.is_some());
        // same spec, same graph
        let again = ExtFamily::parse("ktree:n=12,t=2,seed=5", 99).unwrap().build(1000).unwrap();
        assert_eq!(built.graph, again.graph);
        assert!(ExtFamily::parse("ktree:n=12", 0).is_err());
    }

    #[test]
    fn pair_cap_applies_to_the_product() {
        let err = build_pair("fan:999", "fan:999", 0, 100_000).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(build_pair("fan:9", "path:4", 0, 100).is_ok());
    }
}
