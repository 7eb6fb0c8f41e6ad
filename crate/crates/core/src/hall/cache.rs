use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::coeff::Rat;
use crate::error::{Error, Result};

/// Bumped whenever a convention that changes stored values changes.
pub const CACHE_VERSION: u32 = 1;

type Entry = Vec<(String, Rat)>;

/// Line-delimited store of untwisted structure constants, one file per (quiver, q).
pub struct DiskCache {
    path: PathBuf,
    quiver: String,
    q: u32,
    entries: BTreeMap<(String, String), Entry>,
    pending: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheStats {
    pub path: PathBuf,
    pub entries: usize,
    pub terms: usize,
}

fn header() -> String {
    format!("# ihall structure constants v{CACHE_VERSION}")
}

fn parse_rat(s: &str) -> Option<Rat> {
    s.trim().parse::<Rat>().ok()
}

fn render_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn render_record(q: u32, quiver: &str, a: &str, b: &str, v: &[(String, Rat)]) -> String {
    let rhs: Vec<String> = v.iter().map(|(l, c)| format!("{l}:{}", render_rat(c))).collect();
    format!("q={q} quiver={quiver} A={a} B={b} -> {}", rhs.join(","))
}

/// Parses one record line into `(q, quiver, A, B, value)`.
pub fn parse_record(line: &str) -> Option<(u32, String, String, String, Entry)> {
    let (lhs, rhs) = line.split_once(" -> ")?;
    let mut q = None;
    let mut quiver = None;
    let mut a = None;
    let mut b = None;
    for tok in lhs.split_whitespace() {
        let (k, v) = tok.split_once('=')?;
        match k {
            "q" => q = v.parse().ok(),
            "quiver" => quiver = Some(v.to_string()),
            "A" => a = Some(v.to_string()),
            "B" => b = Some(v.to_string()),
            _ => return None,
        }
    }
    let mut val = Vec::new();
    for t in rhs.split(',').filter(|t| !t.trim().is_empty()) {
        // class labels contain ':' themselves, so split at the last one
        let (l, c) = t.rsplit_once(':')?;
        val.push((l.trim().to_string(), parse_rat(c)?));
    }
    Some((q?, quiver?, a?, b?, val))
}

fn file_name(quiver: &str, q: u32) -> String {
    let safe: String = quiver.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    format!("{safe}_q{q}.hall")
}

impl DiskCache {
    pub fn open(dir: &Path, quiver: &str, q: u32) -> Result<DiskCache> {
        fs::create_dir_all(dir)?;
        let path = dir.join(file_name(quiver, q));
        let mut c = DiskCache { path, quiver: quiver.to_string(), q, entries: BTreeMap::new(), pending: Vec::new() };
        if c.path.exists() {
            c.load()?;
        }
        Ok(c)
    }

    fn corrupt(&self, lineno: usize, what: &str) -> Error {
        Error::CorruptCache(format!("{}:{}: {what}", self.path.display(), lineno + 1))
    }

    fn load(&mut self) -> Result<()> {
        let text = fs::read_to_string(&self.path)?;
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h == header() => {}
            Some((_, h)) if h.starts_with("# ihall structure constants") => {
                // stale convention stamp: start over
                self.entries.clear();
                fs::write(&self.path, format!("{}\n", header()))?;
                return Ok(());
            }
            _ => return Err(self.corrupt(0, "missing header")),
        }
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (q, quiver, a, b, v) = parse_record(line).ok_or_else(|| self.corrupt(i, "unparseable record"))?;
            if q != self.q || quiver != self.quiver {
                return Err(self.corrupt(i, "record for a different ambient"));
            }
            match self.entries.get(&(a.clone(), b.clone())) {
                Some(old) if *old != v => return Err(self.corrupt(i, "conflicting duplicate record")),
                Some(_) => {}
                None => {
                    self.entries.insert((a, b), v);
                }
            }
        }
        Ok(())
    }

    pub fn get(&mut self, a: &str, b: &str) -> Option<Entry> {
        self.entries.get(&(a.to_string(), b.to_string())).cloned()
    }

    /// Idempotent; a different value for an existing key is an integrity error.
    pub fn put(&mut self, a: &str, b: &str, v: Entry) -> Result<()> {
        let key = (a.to_string(), b.to_string());
        if let Some(old) = self.entries.get(&key) {
            if *old != v {
                return Err(Error::CorruptCache(format!("conflicting value for A={a} B={b}")));
            }
            return Ok(());
        }
        self.pending.push(render_record(self.q, &self.quiver, a, b, &v));
        self.entries.insert(key, v);
        if self.pending.len() >= 256 {
            self.flush()?;
        }
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        if self.pending.is_empty() {
            return Ok(());
        }
        let fresh = !self.path.exists();
        let mut f = fs::OpenOptions::new().create(true).append(true).open(&self.path)?;
        if fresh {
            writeln!(f, "{}", header())?;
        }
        for l in self.pending.drain(..) {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            path: self.path.clone(),
            entries: self.entries.len(),
            terms: self.entries.values().map(|v| v.len()).sum(),
        }
    }

    /// Rewrites the file with one sorted record per key.
    pub fn gc(&mut self) -> Result<()> {
        self.pending.clear();
        let mut out = header();
        out.push('\n');
        for ((a, b), v) in &self.entries {
            out.push_str(&render_record(self.q, &self.quiver, a, b, v));
            out.push('\n');
        }
        fs::write(&self.path, out)?;
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(String, String), &Entry)> {
        self.entries.iter()
    }
}

impl Drop for DiskCache {
    fn drop(&mut self) {
        let _ = self.flush();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn round_trip_and_conflicts() {
        let dir = tempfile::tempdir().unwrap();
        {
            let mut c = DiskCache::open(dir.path(), "cn:2", 2).unwrap();
            assert!(c.get("1:1", "0:1").is_none());
            let v = vec![("0:1+1:1".to_string(), rat(1, 1)), ("1:2".to_string(), rat(1, 1))];
            c.put("1:1", "0:1", v.clone()).unwrap();
            c.put("1:1", "0:1", v.clone()).unwrap();
            assert_eq!(c.get("1:1", "0:1"), Some(v));
            let bad = vec![("1:2".to_string(), rat(1, 2))];
            assert!(matches!(c.put("1:1", "0:1", bad), Err(Error::CorruptCache(_))));
        }
        let mut c = DiskCache::open(dir.path(), "cn:2", 2).unwrap();
        assert_eq!(c.get("1:1", "0:1").unwrap().len(), 2);
        assert_eq!(c.stats().entries, 1);
        c.gc().unwrap();
        let text = fs::read_to_string(&c.path).unwrap();
        assert!(text.contains("q=2 quiver=cn:2 A=1:1 B=0:1 -> 0:1+1:1:1/1,1:2:1/1"));
    }

    #[test]
    fn garbage_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join(file_name("cn:3", 2));
        fs::write(&p, format!("{}\nnot a record\n", header())).unwrap();
        assert!(matches!(DiskCache::open(dir.path(), "cn:3", 2), Err(Error::CorruptCache(_))));
        fs::write(&p, format!("{}\nq=2 quiver=cn:3 A=0:1 B=0:1 -> 0:1+0:1:1/x\n", header())).unwrap();
        assert!(matches!(DiskCache::open(dir.path(), "cn:3", 2), Err(Error::CorruptCache(_))));
    }
}
