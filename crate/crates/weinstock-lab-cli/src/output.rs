//! Deterministic artifact writing.

use std::io::Write;
use std::path::Path;

use crate::CliError;

/// A finished artifact: CSV lines or a JSON value.
pub enum Artifact {
    Csv { header: String, rows: Vec<String> },
    Json(serde_json::Value),
}

/// Render and write the artifact to `out` (or stdout). CSV artifacts end
/// with a `# seed=N` stamp unless the schema already carries a seed column;
/// JSON artifacts wrap the payload with the seed.
pub fn emit(seed: u64, out: Option<&Path>, artifact: Artifact) -> Result<(), CliError> {
    let text = match artifact {
        Artifact::Csv { header, rows } => {
            let mut text = header.clone();
            for r in &rows {
                text.push('\n');
                text.push_str(r);
            }
            if !header.split(',').any(|c| c == "seed") {
                text.push_str(&format!("\n# seed={seed}"));
            }
            text.push('\n');
            text
        }
        Artifact::Json(value) => {
            let wrapped = serde_json::json!({ "seed": seed, "result": value });
            let mut s = serde_json::to_string_pretty(&wrapped).expect("serializable");
            s.push('\n');
            s
        }
    };
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("stdout: {e}"))),
    }
}

/// Map body indices through a worker pool, preserving input order in the
/// output so parallelism never changes bytes.
pub fn parallel_map<T, F>(n: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let jobs = jobs.max(1).min(n.max(1));
    if jobs == 1 {
        return (0..n).map(f).collect();
    }
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots_ref = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let value = f(i);
                let mut guard = slots_ref.lock().expect("no poisoned workers");
                guard[i] = Some(value);
            });
        }
    });
    slots.into_iter().map(|s| s.expect("all slots filled")).collect()
}
