//! Newline-delimited JSON bridge to an external scorer process.
//!
//! The child reads requests on stdin and writes one response line per request
//! on stdout:
//!
//! ```text
//! > {"op":"hello","version":1}
//! < {"ok":true,"version":1}
//! > {"op":"sim","id":1,"a":"x causes y","b":"x leads to y"}
//! < {"id":1,"score":0.83}
//! > {"op":"stance","id":2,"belief":"..","argument":"..","graph":"..","stance":"support"}
//! < {"id":2,"score":0.61}
//! > {"op":"classify","id":3,"belief":"..","graph":".."}
//! < {"id":3,"label":"counter"}
//! ```
//!
//! Failures come back as `{"id":k,"error":"..."}`. Exactly one request is in
//! flight per client.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::sync::Mutex;
use std::thread;
use std::time::Duration;

use serde_json::{json, Value};

use crate::metrics::scorer::{
    EdgeSimilarityScorer, GraphLabel, GraphStanceClassifier, ScorerError, Stance, StanceScorer,
};

pub const PROTOCOL_VERSION: u64 = 1;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

pub struct SidecarClient {
    command: String,
    timeout: Duration,
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<std::io::Result<String>>,
    next_id: u64,
}

impl std::fmt::Debug for SidecarClient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SidecarClient")
            .field("command", &self.command)
            .field("pid", &self.child.id())
            .field("next_id", &self.next_id)
            .finish()
    }
}

fn io_err(e: std::io::Error) -> ScorerError {
    ScorerError::Io(e.to_string())
}

impl SidecarClient {
    /// Launches `command` through `sh -c` and performs the handshake.
    pub fn launch(command: &str, timeout: Duration) -> Result<Self, ScorerError> {
        let mut cmd = Command::new("sh");
        cmd.arg("-c")
            .arg(command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit());
        // own process group, so kill() reaches whatever the shell started
        #[cfg(unix)]
        std::os::unix::process::CommandExt::process_group(&mut cmd, 0);
        let mut child = cmd.spawn().map_err(io_err)?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        let mut client = Self {
            command: command.to_string(),
            timeout,
            child,
            stdin,
            lines: rx,
            next_id: 1,
        };
        client.handshake()?;
        Ok(client)
    }

    /// Number of requests sent so far (the handshake excluded).
    pub fn request_count(&self) -> u64 {
        self.next_id - 1
    }

    fn send(&mut self, msg: &Value) -> Result<(), ScorerError> {
        let mut line = msg.to_string();
        line.push('\n');
        self.stdin
            .write_all(line.as_bytes())
            .and_then(|()| self.stdin.flush())
            .map_err(|e| match self.child.try_wait() {
                Ok(Some(status)) => ScorerError::ChildExited(status.to_string()),
                _ => io_err(e),
            })
    }

    fn recv(&mut self) -> Result<Value, ScorerError> {
        let line = match self.lines.recv_timeout(self.timeout) {
            Ok(Ok(line)) => line,
            Ok(Err(e)) => return Err(io_err(e)),
            Err(RecvTimeoutError::Timeout) => {
                self.kill();
                return Err(ScorerError::Timeout(self.timeout));
            }
            Err(RecvTimeoutError::Disconnected) => {
                let status = self.child.wait().map(|s| s.to_string()).unwrap_or_default();
                return Err(ScorerError::ChildExited(status));
            }
        };
        serde_json::from_str(&line)
            .map_err(|e| ScorerError::Protocol(format!("malformed line {line:?}: {e}")))
    }

    fn handshake(&mut self) -> Result<(), ScorerError> {
        self.send(&json!({"op": "hello", "version": PROTOCOL_VERSION}))?;
        let reply = self.recv()?;
        if reply.get("ok") != Some(&Value::Bool(true)) {
            return Err(ScorerError::Protocol(format!("handshake rejected: {reply}")));
        }
        match reply.get("version").and_then(Value::as_u64) {
            Some(PROTOCOL_VERSION) => Ok(()),
            other => Err(ScorerError::Protocol(format!(
                "protocol version mismatch: expected {PROTOCOL_VERSION}, got {other:?}"
            ))),
        }
    }

    /// Sends one request and waits for the response with the same id.
    pub fn request(&mut self, op: &str, mut body: Value) -> Result<Value, ScorerError> {
        let id = self.next_id;
        self.next_id += 1;
        body["op"] = json!(op);
        body["id"] = json!(id);
        self.send(&body)?;
        let reply = self.recv()?;
        if reply.get("id").and_then(Value::as_u64) != Some(id) {
            return Err(ScorerError::Protocol(format!("expected id {id}, got {reply}")));
        }
        if let Some(err) = reply.get("error") {
            return Err(ScorerError::Protocol(format!("sidecar error: {err}")));
        }
        Ok(reply)
    }

    fn score_field(reply: &Value) -> Result<f64, ScorerError> {
        reply
            .get("score")
            .and_then(Value::as_f64)
            .filter(|x| x.is_finite())
            .ok_or_else(|| ScorerError::Protocol(format!("missing numeric score in {reply}")))
    }

    /// Raw similarity as reported by the sidecar (not clamped).
    pub fn similarity(&mut self, a: &str, b: &str) -> Result<f64, ScorerError> {
        let reply = self.request("sim", json!({"a": a, "b": b}))?;
        Self::score_field(&reply)
    }

    /// Scores pairs one at a time; results are in request order.
    pub fn similarity_batch(&mut self, pairs: &[(&str, &str)]) -> Result<Vec<f64>, ScorerError> {
        pairs.iter().map(|(a, b)| self.similarity(a, b)).collect()
    }

    pub fn stance(
        &mut self,
        belief: &str,
        argument: &str,
        graph: &str,
        target: Stance,
    ) -> Result<f64, ScorerError> {
        let reply = self.request(
            "stance",
            json!({"belief": belief, "argument": argument, "graph": graph, "stance": target.as_str()}),
        )?;
        Self::score_field(&reply)
    }

    pub fn classify(&mut self, belief: &str, graph: &str) -> Result<GraphLabel, ScorerError> {
        let reply = self.request("classify", json!({"belief": belief, "graph": graph}))?;
        reply
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| ScorerError::Protocol(format!("missing label in {reply}")))?
            .parse()
            .map_err(ScorerError::Protocol)
    }

    /// Kills the child and launches a fresh one with the same command.
    pub fn restart(&mut self) -> Result<(), ScorerError> {
        self.kill();
        *self = Self::launch(&self.command, self.timeout)?;
        Ok(())
    }

    pub fn kill(&mut self) {
        #[cfg(unix)]
        if let Ok(None) = self.child.try_wait() {
            // SAFETY: plain syscall on the group created at launch
            unsafe {
                libc::kill(-(self.child.id() as libc::pid_t), libc::SIGKILL);
            }
        }
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

impl Drop for SidecarClient {
    fn drop(&mut self) {
        self.kill();
    }
}

/// Free-function form of [`SidecarClient::similarity`].
pub fn sidecar_score(client: &mut SidecarClient, a: &str, b: &str) -> Result<f64, ScorerError> {
    client.similarity(a, b)
}

/// Shares one client across the scorer traits. Calls are serialized by a lock,
/// so the scorer reports itself as non-reentrant. Scores are clamped to [0, 1].
#[derive(Debug)]
pub struct SidecarScorer {
    client: Mutex<SidecarClient>,
}

impl SidecarScorer {
    pub fn new(client: SidecarClient) -> Self {
        Self {
            client: Mutex::new(client),
        }
    }

    pub fn launch(command: &str, timeout: Duration) -> Result<Self, ScorerError> {
        SidecarClient::launch(command, timeout).map(Self::new)
    }

    fn with<T>(&self, f: impl FnOnce(&mut SidecarClient) -> Result<T, ScorerError>) -> Result<T, ScorerError> {
        let mut guard = self
            .client
            .lock()
            .map_err(|_| ScorerError::Other("sidecar lock poisoned".into()))?;
        f(&mut guard)
    }
}

impl EdgeSimilarityScorer for SidecarScorer {
    fn score(&self, a: &str, b: &str) -> Result<f64, ScorerError> {
        self.with(|c| c.similarity(a, b)).map(|x| x.clamp(0.0, 1.0))
    }

    fn is_reentrant(&self) -> bool {
        false
    }
}

impl StanceScorer for SidecarScorer {
    fn probability(
        &self,
        belief: &str,
        argument: &str,
        graph_text: &str,
        target: Stance,
    ) -> Result<f64, ScorerError> {
        self.with(|c| c.stance(belief, argument, graph_text, target))
            .map(|x| x.clamp(0.0, 1.0))
    }

    fn is_reentrant(&self) -> bool {
        false
    }
}

impl GraphStanceClassifier for SidecarScorer {
    fn classify(&self, belief: &str, graph_text: &str) -> Result<GraphLabel, ScorerError> {
        self.with(|c| c.classify(belief, graph_text))
    }

    fn is_reentrant(&self) -> bool {
        false
    }
}
