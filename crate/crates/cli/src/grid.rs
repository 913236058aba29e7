use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Lin,
    Log,
}

/// `start:stop:n:log|lin`. For detuning grids the values are -Delta in MHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub n: usize,
    pub scale: Scale,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.start];
        }
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == self.n - 1 {
                    return self.stop;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Lin => self.start + (self.stop - self.start) * t,
                    Scale::Log => {
                        let s = self.start.signum();
                        s * (self.start.abs().ln() * (1.0 - t) + self.stop.abs().ln() * t).exp()
                    }
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [a, b, n, scale] = parts[..] else {
            return Err(format!("grid '{s}' must look like start:stop:n:log|lin"));
        };
        let num = |x: &str| -> Result<f64, String> {
            match x.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("grid '{s}': '{x}' is not a finite number")),
            }
        };
        let (start, stop) = (num(a)?, num(b)?);
        let n: usize = n.parse().map_err(|_| format!("grid '{s}': '{n}' is not a point count"))?;
        if n == 0 {
            return Err(format!("grid '{s}' is empty"));
        }
        let scale = match scale {
            "lin" => Scale::Lin,
            "log" => Scale::Log,
            other => return Err(format!("grid '{s}': scale '{other}' is neither log nor lin")),
        };
        if scale == Scale::Log && (start == 0.0 || stop == 0.0 || start.signum() != stop.signum()) {
            return Err(format!("log grid '{s}' needs nonzero endpoints of one sign"));
        }
        Ok(Grid { start, stop, n, scale })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = match self.scale {
            Scale::Lin => "lin",
            Scale::Log => "log",
        };
        write!(f, "{}:{}:{}:{scale}", self.start, self.stop, self.n)
    }
}
