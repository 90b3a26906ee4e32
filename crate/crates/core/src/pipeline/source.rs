//! graph6 line streams from files or from a `geng` subprocess.

use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::process::{Child, ChildStdout, Command, Stdio};

use super::{InputConnectivity, PipelineError};

/// Non-empty, trimmed graph6 lines.
pub type LineStream = Box<dyn Iterator<Item = io::Result<String>> + Send>;

const HEADER: &str = ">>graph6<<";

fn clean(line: io::Result<String>) -> Option<io::Result<String>> {
    match line {
        Ok(l) => {
            let l = l.trim();
            let l = l.strip_prefix(HEADER).unwrap_or(l);
            (!l.is_empty()).then(|| Ok(l.to_string()))
        }
        Err(e) => Some(Err(e)),
    }
}

/// Concatenation of the given files, in order.
pub fn open_files(paths: &[PathBuf]) -> Result<LineStream, PipelineError> {
    let readers = paths
        .iter()
        .map(|p| File::open(p).map(BufReader::new).map_err(|source| PipelineError::Open { path: p.clone(), source }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Box::new(readers.into_iter().flat_map(|r| r.lines()).filter_map(clean)))
}

/// Parameters of one `geng` run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GengQuery {
    pub vertices: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub connectivity: InputConnectivity,
}

impl GengQuery {
    pub fn args(&self) -> Vec<String> {
        let mut args = Vec::new();
        args.push(
            match self.connectivity {
                InputConnectivity::Connected => "-c",
                InputConnectivity::Biconnected => "-C",
            }
            .to_string(),
        );
        args.push(format!("-d{}", self.min_degree));
        args.push("-q".to_string());
        args.push(self.vertices.to_string());
        args.push(format!("{0}:{0}", self.edges));
        args
    }
}

struct GengLines {
    child: Child,
    lines: io::Lines<BufReader<ChildStdout>>,
    done: bool,
}

impl Iterator for GengLines {
    type Item = io::Result<String>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.lines.next() {
            Some(line) => Some(line),
            None => {
                self.done = true;
                match self.child.wait() {
                    Ok(status) if status.success() => None,
                    Ok(status) => Some(Err(io::Error::other(format!("geng exited with {status}")))),
                    Err(e) => Some(Err(e)),
                }
            }
        }
    }
}

impl Drop for GengLines {
    fn drop(&mut self) {
        if !self.done {
            let _ = self.child.kill();
            let _ = self.child.wait();
        }
    }
}

/// Streams the output of `geng` for each query in turn.
pub fn run_geng(geng: &Path, queries: &[GengQuery]) -> Result<LineStream, PipelineError> {
    let mut streams = Vec::new();
    for q in queries {
        let mut child = Command::new(geng)
            .args(q.args())
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|source| PipelineError::Spawn { path: geng.to_path_buf(), source })?;
        let stdout = child.stdout.take().expect("stdout is piped");
        streams.push(GengLines { child, lines: BufReader::new(stdout).lines(), done: false });
    }
    Ok(Box::new(streams.into_iter().flatten().filter_map(clean)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn geng_arguments() {
        let mut q = GengQuery { vertices: 10, edges: 25, min_degree: 4, connectivity: InputConnectivity::Biconnected };
        assert_eq!(q.args(), ["-C", "-d4", "-q", "10", "25:25"]);
        q.connectivity = InputConnectivity::Connected;
        assert_eq!(q.args(), ["-c", "-d4", "-q", "10", "25:25"]);
    }

    #[test]
    fn files_are_concatenated_and_cleaned() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.g6");
        let b = dir.path().join("b.g6");
        writeln!(File::create(&a).unwrap(), ">>graph6<<C~\n\n  Bg  ").unwrap();
        writeln!(File::create(&b).unwrap(), "A_").unwrap();
        let lines: Vec<String> = open_files(&[a, b]).unwrap().map(Result::unwrap).collect();
        assert_eq!(lines, ["C~", "Bg", "A_"]);
    }

    #[test]
    fn missing_file_and_binary() {
        assert!(matches!(open_files(&[PathBuf::from("/nonexistent/x.g6")]), Err(PipelineError::Open { .. })));
        let q = GengQuery { vertices: 4, edges: 3, min_degree: 1, connectivity: InputConnectivity::Connected };
        assert!(matches!(run_geng(Path::new("/nonexistent/geng"), &[q]), Err(PipelineError::Spawn { .. })));
    }
}
