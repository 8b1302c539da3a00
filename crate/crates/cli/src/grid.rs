//! Parsers for list and grid flags.

/// `start:stop:count` (inclusive, linear) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let values = match parts.as_slice() {
        [single] => single
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| format!("`{v}` is not a number")))
            .collect::<Result<Vec<_>, _>>()?,
        [start, stop, count] => {
            let start: f64 = start.trim().parse().map_err(|_| format!("bad grid start `{start}`"))?;
            let stop: f64 = stop.trim().parse().map_err(|_| format!("bad grid stop `{stop}`"))?;
            let count: usize = count.trim().parse().map_err(|_| format!("bad grid count `{count}`"))?;
            match count {
                0 => return Err("grid count must be >= 1".into()),
                1 => vec![start],
                _ => {
                    let step = (stop - start) / (count - 1) as f64;
                    (0..count)
                        .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
                        .collect()
                }
            }
        }
        _ => return Err(format!("expected start:stop:count or a comma list, got `{s}`")),
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err("grid values must be finite".into());
    }
    Ok(values)
}
