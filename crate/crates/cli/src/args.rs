//! Small hand-rolled argument parser: five subcommands, `--flag value`
//! pairs, sample counts in scientific notation.

use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct Args {
    pub command: String,
    flags: BTreeMap<String, String>,
    switches: Vec<String>,
}

#[derive(Debug)]
pub struct ArgError(pub String);

impl std::fmt::Display for ArgError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

const SWITCHES: &[&str] = &["x-states", "assert-registry", "check", "json", "bures", "both-offsets", "help"];

impl Args {
    pub fn parse(argv: &[String]) -> Result<Args, ArgError> {
        if argv.is_empty() {
            return Err(ArgError("missing command".into()));
        }
        let command = argv[0].clone();
        let mut flags = BTreeMap::new();
        let mut switches = Vec::new();
        let mut i = 1;
        while i < argv.len() {
            let a = &argv[i];
            let name = a
                .strip_prefix("--")
                .ok_or_else(|| ArgError(format!("expected --flag, got '{a}'")))?;
            if SWITCHES.contains(&name) {
                switches.push(name.to_string());
                i += 1;
            } else {
                let value = argv
                    .get(i + 1)
                    .ok_or_else(|| ArgError(format!("--{name} needs a value")))?;
                flags.insert(name.to_string(), value.clone());
                i += 2;
            }
        }
        Ok(Args { command, flags, switches })
    }

    pub fn switch(&self, name: &str) -> bool {
        self.switches.iter().any(|s| s == name)
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.flags.get(name).map(|s| s.as_str())
    }

    pub fn get_or(&self, name: &str, default: &str) -> String {
        self.get(name).unwrap_or(default).to_string()
    }

    pub fn count(&self, name: &str, default: u64) -> Result<u64, ArgError> {
        match self.get(name) {
            None => Ok(default),
            Some(s) => parse_count(s).ok_or_else(|| ArgError(format!("bad count --{name} {s}"))),
        }
    }

    pub fn u32_flag(&self, name: &str, default: u32) -> Result<u32, ArgError> {
        match self.get(name) {
            None => Ok(default),
            Some(s) => s.parse().map_err(|_| ArgError(format!("bad integer --{name} {s}"))),
        }
    }

    pub fn f64_flag(&self, name: &str, default: f64) -> Result<f64, ArgError> {
        match self.get(name) {
            None => Ok(default),
            Some(s) => s.parse().map_err(|_| ArgError(format!("bad number --{name} {s}"))),
        }
    }

    /// Dims like "2x3".
    pub fn dims(&self, default: (usize, usize)) -> Result<(usize, usize), ArgError> {
        match self.get("dims") {
            None => Ok(default),
            Some(s) => {
                let parts: Vec<&str> = s.split('x').collect();
                if parts.len() != 2 {
                    return Err(ArgError(format!("bad --dims '{s}', expected MxN")));
                }
                let a = parts[0].parse().map_err(|_| ArgError(format!("bad dims '{s}'")))?;
                let b = parts[1].parse().map_err(|_| ArgError(format!("bad dims '{s}'")))?;
                Ok((a, b))
            }
        }
    }
}

/// Accepts "10000000", "1e7", "2.5e6".
pub fn parse_count(s: &str) -> Option<u64> {
    if let Ok(v) = s.parse::<u64>() {
        return Some(v);
    }
    let f: f64 = s.parse().ok()?;
    if f < 0.0 || !f.is_finite() || f > 9.2e18 || (f.fract() != 0.0 && f < 1e15 && f.round() != f)
    {
        // allow 1e7-style values; reject fractional counts
        if f.round() == f {
            return Some(f as u64);
        }
        return None;
    }
    Some(f.round() as u64)
}
