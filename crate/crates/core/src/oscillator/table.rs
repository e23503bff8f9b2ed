use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::{
    element, extrapolate, in_quadrature_region, wavefunctions, OperatorTag, QuadratureScheme,
    TABLE_LIMIT,
};
use crate::error::{Error, Result};
use crate::text::format_f64;

/// Directory for on-disk table caches, read by [`cached_table`].
pub const TABLE_CACHE_ENV: &str = "PERTURBA_TABLE_CACHE";

/// Symmetric table of `⟨n|Ω|m⟩` for `0 ≤ n, m ≤ max_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementTable {
    tag: OperatorTag,
    max_n: usize,
    values: Vec<f64>,
}

impl ElementTable {
    pub fn tag(&self) -> OperatorTag {
        self.tag
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Number of basis states covered (`max_n + 1`).
    pub fn size(&self) -> usize {
        self.max_n + 1
    }

    #[inline]
    pub fn get(&self, n: usize, m: usize) -> f64 {
        self.values[n * (self.max_n + 1) + m]
    }

    pub fn require(&self, size: usize) -> Result<()> {
        if size > self.size() {
            Err(Error::TableTooSmall {
                required: size.saturating_sub(1),
                available: self.max_n,
            })
        } else {
            Ok(())
        }
    }

    /// CSV with header `n,m,value`, one row per ordered pair.
    pub fn to_csv(&self) -> String {
        let size = self.size();
        let mut out = String::with_capacity(size * size * 24);
        out.push_str("n,m,value\n");
        for n in 0..size {
            for m in 0..size {
                let _ = writeln!(out, "{n},{m},{}", format_f64(self.get(n, m)));
            }
        }
        out
    }

    /// Parses [`ElementTable::to_csv`] output. The table must cover exactly
    /// `0..=max_n` in both indices.
    pub fn from_csv(tag: OperatorTag, max_n: usize, text: &str) -> Result<Self> {
        let size = max_n + 1;
        let mut values = vec![f64::NAN; size * size];
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "n,m,value")) => {}
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "missing n,m,value header".into(),
                })
            }
        }
        let mut count = 0;
        for (i, line) in lines {
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let mut parts = line.split(',');
            let n: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad n"))?;
            let m: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad m"))?;
            let v: f64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad value"))?;
            if n >= size || m >= size {
                return Err(bad("index beyond table size"));
            }
            values[n * size + m] = v;
            count += 1;
        }
        if count != size * size || values.iter().any(|v| v.is_nan()) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("expected {} entries, found {count}", size * size),
            });
        }
        Ok(Self { tag, max_n, values })
    }
}

/// Builds the full table. Closed-form operators are filled directly; the `λ`
/// operators are integrated once over a shared node set (cut off for the
/// largest in-region index) and the remaining entries extrapolated from
/// those anchors.
pub fn build_element_table(
    tag: OperatorTag,
    max_n: usize,
    scheme: &QuadratureScheme,
) -> Result<ElementTable> {
    if max_n > TABLE_LIMIT {
        return Err(Error::IndexOutOfRange {
            n: max_n,
            m: max_n,
            limit: TABLE_LIMIT,
        });
    }
    let size = max_n + 1;
    let mut values = vec![0.0; size * size];
    if tag.is_closed_form() {
        for n in 0..size {
            for m in 0..size {
                values[n * size + m] = element(tag, n, m, scheme)?;
            }
        }
        return Ok(ElementTable { tag, max_n, values });
    }

    let anchors = quadrature_anchors(tag, max_n, scheme);
    let mut anchor = |n: usize, k: usize| anchors[&(n, k)];
    for lo in 0..size {
        for hi in (lo..size).step_by(2) {
            let v = extrapolate(tag, lo, hi - lo, &mut anchor);
            values[lo * size + hi] = v;
            values[hi * size + lo] = v;
        }
    }
    Ok(ElementTable { tag, max_n, values })
}

/// Quadrature values for every in-region pair `(n, n+k)` the table can
/// reference, keyed by `(n, k)`.
fn quadrature_anchors(
    tag: OperatorTag,
    max_n: usize,
    scheme: &QuadratureScheme,
) -> HashMap<(usize, usize), f64> {
    let mut pairs = Vec::new();
    for lo in 0..=max_n {
        for hi in (lo..=max_n).step_by(2) {
            let k = hi - lo;
            if k > super::K_EXTRAP {
                // anchored at (lo, 50) or its n-extrapolated source
                let k = super::K_EXTRAP;
                let n_e = super::N_EXTRAP_BASE - k / 2;
                pairs.push((lo.min(n_e), k));
            } else if in_quadrature_region(lo, hi) {
                pairs.push((lo, k));
            } else {
                pairs.push((super::N_EXTRAP_BASE - k / 2, k));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let top = pairs.iter().map(|&(n, k)| n + k).max().unwrap_or(0);
    let (nodes, weights) = scheme.rule(top, top);
    let power = tag.power() as i32;
    // per-node ψ_0..ψ_top, reduced over nodes in parallel chunks
    let partial: Vec<Vec<f64>> = nodes
        .par_chunks(scheme.points_per_panel.max(1))
        .zip(weights.par_chunks(scheme.points_per_panel.max(1)))
        .map(|(xs, ws)| {
            let mut psi = Vec::with_capacity(top + 1);
            let mut acc = vec![0.0; pairs.len()];
            for (&x, &w) in xs.iter().zip(ws) {
                wavefunctions(top, x, &mut psi);
                let wx = w * x.powi(power);
                for (a, &(n, k)) in acc.iter_mut().zip(&pairs) {
                    *a += wx * psi[n] * psi[n + k];
                }
            }
            acc
        })
        .collect();
    let mut totals = vec![0.0; pairs.len()];
    for chunk in &partial {
        for (t, v) in totals.iter_mut().zip(chunk) {
            *t += v;
        }
    }
    pairs
        .into_iter()
        .zip(totals)
        .map(|(p, v)| (p, 2.0 * v))
        .collect()
}

type CacheKey = (OperatorTag, usize);

fn memory_cache() -> &'static Mutex<HashMap<CacheKey, Arc<ElementTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<ElementTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_file(dir: &Path, tag: OperatorTag, max_n: usize) -> PathBuf {
    dir.join(format!("{}_{max_n}.csv", tag.name()))
}

/// Returns the table for `(tag, max_n)` built with the default scheme,
/// computing it at most once per process. When `PERTURBA_TABLE_CACHE` names
/// a directory, tables are also read from and written to
/// `<dir>/<op>_<max_n>.csv`; unreadable or mismatched files are rebuilt.
pub fn cached_table(tag: OperatorTag, max_n: usize) -> Result<Arc<ElementTable>> {
    let dir = std::env::var_os(TABLE_CACHE_ENV).map(PathBuf::from);
    cached_table_in(tag, max_n, dir.as_deref())
}

pub(crate) fn cached_table_in(
    tag: OperatorTag,
    max_n: usize,
    dir: Option<&Path>,
) -> Result<Arc<ElementTable>> {
    let key = (tag, max_n);
    if let Some(t) = memory_cache().lock().unwrap().get(&key) {
        return Ok(Arc::clone(t));
    }
    let table = match dir {
        Some(dir) => load_or_build(dir, tag, max_n)?,
        None => build_element_table(tag, max_n, &QuadratureScheme::default())?,
    };
    let table = Arc::new(table);
    memory_cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

fn load_or_build(dir: &Path, tag: OperatorTag, max_n: usize) -> Result<ElementTable> {
    let path = cache_file(dir, tag, max_n);
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(table) = ElementTable::from_csv(tag, max_n, &text) {
            return Ok(table);
        }
    }
    let table = build_element_table(tag, max_n, &QuadratureScheme::default())?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, table.to_csv())?;
    Ok(table)
}
