//! Run configuration: command-line flags layered over an optional `key=value` file and
//! environment defaults.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};

/// Keys of a config file that are not gallery parameters.
const RESERVED: &[&str] = &[
    "command", "name", "grid", "field", "property", "output", "fmt", "tol", "fd_step", "scheme", "rho", "csv",
    "points", "seed", "n",
];

/// Parsed `key=value` file. Lines starting with `#` and blank lines are skipped.
#[derive(Clone, Debug, Default)]
pub struct ConfigFile {
    pub values: BTreeMap<String, String>,
    /// Gallery parameters: `param.KEY=VALUE` or any key outside the reserved set.
    pub params: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {}: expected key=value", lineno + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                bail!("config line {}: empty key", lineno + 1);
            }
            if let Some(p) = k.strip_prefix("param.") {
                out.params.insert(p.to_string(), v.to_string());
            } else if RESERVED.contains(&k) {
                out.values.insert(k.to_string(), v.to_string());
            } else {
                out.params.insert(k.to_string(), v.to_string());
            }
        }
        Ok(out)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Parses a value with `FromStr`, naming the key on failure.
    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|_| anyhow!("config key {key}: cannot parse {v:?}")))
            .transpose()
    }
}

/// Reads a float default from the environment.
pub fn env_f64(key: &str) -> Result<Option<f64>> {
    match std::env::var(key) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| anyhow!("environment {key}: cannot parse {v:?}")),
        Err(_) => Ok(None),
    }
}

/// `64x64`, `21` or `9x9x9`.
pub fn parse_grid(spec: &str) -> Result<Vec<usize>> {
    let shape: Vec<usize> = spec
        .split(['x', 'X'])
        .map(|p| p.trim().parse::<usize>().map_err(|_| anyhow!("bad grid spec {spec:?}")))
        .collect::<Result<_>>()?;
    if shape.is_empty() || shape.contains(&0) {
        bail!("bad grid spec {spec:?}: every axis needs at least one point");
    }
    Ok(shape)
}

/// Grid shape for a domain of dimension `m`; a single count applies to every axis.
pub fn grid_shape(spec: Option<&str>, m: usize, default: usize) -> Result<Vec<usize>> {
    let shape = match spec {
        Some(s) => parse_grid(s)?,
        None => vec![default],
    };
    match shape.len() {
        1 => Ok(vec![shape[0]; m]),
        k if k == m => Ok(shape),
        k => bail!("grid has {k} axes but the domain has {m}"),
    }
}

/// Gallery parameters from the file, overridden by `KEY=VALUE` flags.
pub fn merge_params(file: &ConfigFile, flags: &[String]) -> Result<BTreeMap<String, f64>> {
    let mut raw = file.params.clone();
    for kv in flags {
        let (k, v) = kv.split_once('=').ok_or_else(|| anyhow!("parameter {kv:?}: expected KEY=VALUE"))?;
        raw.insert(k.trim().to_string(), v.trim().to_string());
    }
    raw.into_iter()
        .map(|(k, v)| {
            let x: f64 = v.parse().map_err(|_| anyhow!("parameter {k}: {v:?} is not a number"))?;
            if !x.is_finite() {
                bail!("parameter {k} must be finite");
            }
            Ok((k, x))
        })
        .collect()
}

/// Long flags each subcommand declares; anything else of the form `--KEY VALUE` is a
/// gallery parameter.
fn known_flags(command: &str) -> Option<&'static [&'static str]> {
    match command {
        "generate" => Some(&["grid", "output", "fmt", "config", "param", "rho", "help"]),
        "verify" => Some(&[
            "field", "property", "grid", "output", "tol", "fd-step", "scheme", "config", "param", "rho", "csv", "help",
        ]),
        _ => None,
    }
}

/// Rewrites `--KEY VALUE` and `--KEY=VALUE` into `--param KEY=VALUE` for flags the
/// subcommand does not declare, so gallery parameters read naturally (`--sigma 0.2`).
pub fn rewrite_param_flags(args: Vec<String>) -> Vec<String> {
    let Some(pos) = args.iter().skip(1).position(|a| !a.starts_with('-')).map(|p| p + 1) else {
        return args;
    };
    let Some(known) = known_flags(&args[pos]) else { return args };
    let mut out: Vec<String> = args[..=pos].to_vec();
    let mut rest = args[pos + 1..].iter();
    while let Some(a) = rest.next() {
        if a == "--" {
            out.push(a.clone());
            out.extend(rest.cloned());
            break;
        }
        let Some(body) = a.strip_prefix("--") else {
            out.push(a.clone());
            continue;
        };
        let key = body.split_once('=').map_or(body, |(k, _)| k);
        if known.contains(&key) {
            out.push(a.clone());
            continue;
        }
        out.push("--param".into());
        match body.split_once('=') {
            Some((k, v)) => out.push(format!("{k}={v}")),
            None => match rest.next() {
                Some(v) => out.push(format!("{body}={v}")),
                // Leave a malformed pair for the parameter parser to reject.
                None => out.push(body.to_string()),
            },
        }
    }
    out
}

/// Resolves command-line aliases to registry names.
pub fn resolve_name(name: &str, rho: Option<&str>) -> Result<String> {
    Ok(match (name, rho) {
        ("cylinder_round", _) => "cylinder".into(),
        ("cr_warped", None | Some("sin")) => "spherical_loxodrome".into(),
        ("cr_warped", Some("sqrt2exp")) => "cr_warped_sqrt2exp".into(),
        ("cr_warped", Some("exp")) => "parabolic_loxodrome".into(),
        ("cr_warped", Some(r)) => bail!("cr_warped has no shipped entry for rho = {r}"),
        (n, Some(r)) => bail!("--rho only applies to cr_warped, got {n} with rho = {r}"),
        (n, _) => n.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn unknown_flags_become_parameters() {
        let got = rewrite_param_flags(s(&["subgeom", "generate", "dini", "--sigma", "0.2", "--grid", "8", "--A=-1"]));
        assert_eq!(got, s(&["subgeom", "generate", "dini", "--param", "sigma=0.2", "--grid", "8", "--param", "A=-1"]));
        let untouched = s(&["subgeom", "atlas", "check", "mercator", "--rho", "sin"]);
        assert_eq!(rewrite_param_flags(untouched.clone()), untouched);
    }

    #[test]
    fn config_file_splits_parameters() {
        let c = ConfigFile::parse("# comment\nname = dini\n\ngrid=8x8\nsigma=0.2\nparam.A = 1\n").unwrap();
        assert_eq!(c.get("name"), Some("dini"));
        assert_eq!(c.params["sigma"], "0.2");
        assert_eq!(c.params["A"], "1");
        assert!(ConfigFile::parse("no equals sign").is_err());
    }

    #[test]
    fn flags_override_file_parameters() {
        let c = ConfigFile::parse("sigma=0.2\nA=1").unwrap();
        let p = merge_params(&c, &s(&["sigma=0.4"])).unwrap();
        assert_eq!(p["sigma"], 0.4);
        assert_eq!(p["A"], 1.0);
        assert!(merge_params(&c, &s(&["A=abc"])).is_err());
    }

    #[test]
    fn grid_specs() {
        assert_eq!(grid_shape(Some("64x64"), 2, 21).unwrap(), vec![64, 64]);
        assert_eq!(grid_shape(Some("9"), 3, 21).unwrap(), vec![9, 9, 9]);
        assert_eq!(grid_shape(None, 1, 21).unwrap(), vec![21]);
        assert!(grid_shape(Some("4x4"), 3, 21).is_err());
        assert!(grid_shape(Some("0x4"), 2, 21).is_err());
    }

    #[test]
    fn aliases() {
        assert_eq!(resolve_name("cylinder_round", None).unwrap(), "cylinder");
        assert_eq!(resolve_name("cr_warped", Some("sin")).unwrap(), "spherical_loxodrome");
        assert!(resolve_name("dini", Some("sin")).is_err());
    }
}
