//! Embedding certificates: the face list of an embedding, a fingerprint of
//! the graph it belongs to, and the genus it proves.
//!
//! The verifier only uses the [`Graph`] API; it shares nothing with the
//! search engine so that it can catch engine bugs.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{Dart, Graph};

pub const CERTIFICATE_HEADER: &str = "PAGE-CERT v1";

/// Genus of an embedding with `f` faces: `max(0, 1 - floor((f - m + n) / 2))`.
pub fn genus_from_face_count(n: usize, m: usize, f: usize) -> usize {
    let x = f as i64 - m as i64 + n as i64;
    (1 - x.div_euclid(2)).max(0) as usize
}

/// Whether Euler's formula admits an orientable embedding with `f` faces.
pub fn euler_parity_ok(n: usize, m: usize, f: usize) -> bool {
    (n + f + m).is_multiple_of(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphFingerprint {
    pub n: usize,
    pub m: usize,
    /// Hex prefix of SHA-256 over the sorted, normalized edge list.
    pub hash: String,
}

impl GraphFingerprint {
    pub fn of(g: &Graph) -> Self {
        let mut hasher = Sha256::new();
        for (u, v) in g.normalized_edges() {
            hasher.update(format!("{u} {v}\n").as_bytes());
        }
        let digest = hasher.finalize();
        let hash = digest[..8].iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        GraphFingerprint {
            n: g.n(),
            m: g.m(),
            hash,
        }
    }
}

/// One facial walk. `edges` is only required for multigraphs, where a
/// vertex pair does not determine the edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub edges: Option<Vec<usize>>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Same walk traversed backwards.
    pub fn reversed(&self) -> Face {
        let k = self.vertices.len();
        let vertices = (0..k).map(|i| self.vertices[(k - i) % k]).collect();
        let edges = self
            .edges
            .as_ref()
            .map(|e| (0..k).map(|i| e[(2 * k - 1 - i) % k]).collect());
        Face { vertices, edges }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub fingerprint: GraphFingerprint,
    pub faces: Vec<Face>,
    pub claimed_genus: usize,
}

impl EmbeddingCertificate {
    /// Builds a certificate from dart cycles, claiming the genus implied by
    /// the face count.
    pub fn from_dart_faces(g: &Graph, faces: &[Vec<Dart>]) -> Self {
        let with_edges = g.has_parallel_edges();
        let faces = faces
            .iter()
            .map(|walk| Face {
                vertices: walk.iter().map(|&d| g.tail(d)).collect(),
                edges: with_edges.then(|| walk.iter().map(|d| d.edge()).collect()),
            })
            .collect::<Vec<_>>();
        EmbeddingCertificate {
            fingerprint: GraphFingerprint::of(g),
            claimed_genus: genus_from_face_count(g.n(), g.m(), faces.len()),
            faces,
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
}

/// The four verification conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// Consecutive face vertices must be joined by an edge.
    EdgeMembership,
    /// Each dart must be traversed exactly once.
    DartCover,
    /// Corners at each vertex must form one cyclic rotation.
    Rotation,
    /// The claimed genus must match the face count.
    Genus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyFace {
        face: usize,
    },
    NotAnEdge {
        face: usize,
        position: usize,
        from: usize,
        to: usize,
    },
    AmbiguousEdge {
        face: usize,
        position: usize,
    },
    DartCount {
        tail: usize,
        head: usize,
        edge: usize,
        count: usize,
    },
    LengthSum {
        total: usize,
        expected: usize,
    },
    Rotation {
        vertex: usize,
        detail: String,
    },
    GenusMismatch {
        claimed: usize,
        computed: usize,
    },
    Parity {
        faces: usize,
    },
}

impl Violation {
    pub fn condition(&self) -> Condition {
        match self {
            Violation::EmptyFace { .. }
            | Violation::NotAnEdge { .. }
            | Violation::AmbiguousEdge { .. } => Condition::EdgeMembership,
            Violation::DartCount { .. } | Violation::LengthSum { .. } => Condition::DartCover,
            Violation::Rotation { .. } => Condition::Rotation,
            Violation::GenusMismatch { .. } | Violation::Parity { .. } => Condition::Genus,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyFace { face } => write!(f, "edges: face {face} is empty"),
            Violation::NotAnEdge {
                face,
                position,
                from,
                to,
            } => write!(f, "edges: face {face} step {position}: {from}-{to} is not an edge"),
            Violation::AmbiguousEdge { face, position } => write!(
                f,
                "edges: face {face} step {position}: parallel edges need explicit edge ids"
            ),
            Violation::DartCount {
                tail,
                head,
                edge,
                count,
            } => write!(
                f,
                "darts: {tail}->{head} (edge {edge}) used {count} times, expected 1"
            ),
            Violation::LengthSum { total, expected } => {
                write!(f, "darts: face lengths sum to {total}, expected {expected}")
            }
            Violation::Rotation { vertex, detail } => {
                write!(f, "rotation: vertex {vertex}: {detail}")
            }
            Violation::GenusMismatch { claimed, computed } => {
                write!(f, "genus: claimed {claimed}, face count gives {computed}")
            }
            Violation::Parity { faces } => {
                write!(f, "genus: {faces} faces violate Euler parity")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition() == condition)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate is for n={cert_n} m={cert_m} hash={cert_hash}, graph is n={n} m={m} hash={hash}")]
    FingerprintMismatch {
        cert_n: usize,
        cert_m: usize,
        cert_hash: String,
        n: usize,
        m: usize,
        hash: String,
    },
    #[error("malformed certificate at line {line}: {message}")]
    MalformedCertificate { line: usize, message: String },
}

/// Checks a certificate against `g`: edges exist, every dart is used once,
/// every vertex sees a single cyclic rotation, and the genus claim matches.
pub fn verify_certificate(
    g: &Graph,
    cert: &EmbeddingCertificate,
) -> Result<VerificationReport, CertificateError> {
    let fp = GraphFingerprint::of(g);
    if fp != cert.fingerprint {
        return Err(CertificateError::FingerprintMismatch {
            cert_n: cert.fingerprint.n,
            cert_m: cert.fingerprint.m,
            cert_hash: cert.fingerprint.hash.clone(),
            n: fp.n,
            m: fp.m,
            hash: fp.hash,
        });
    }
    let mut violations = Vec::new();

    // vertex pair -> edges joining it
    let mut joins: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        joins.entry((u.min(v), u.max(v))).or_default().push(e);
    }
    // (vertex, edge) -> slot
    let mut slot_of: HashMap<(usize, usize), usize> = HashMap::new();
    for v in 0..g.n() {
        for (slot, inc) in g.neighbors(v).iter().enumerate() {
            slot_of.insert((v, inc.edge), slot);
        }
    }

    let mut dart_use = vec![0usize; 2 * g.m()];
    let mut succ: Vec<Vec<Vec<usize>>> = (0..g.n()).map(|v| vec![Vec::new(); g.degree(v)]).collect();
    let mut total = 0;
    for (fi, face) in cert.faces.iter().enumerate() {
        let k = face.vertices.len();
        total += k;
        if k == 0 {
            violations.push(Violation::EmptyFace { face: fi });
            continue;
        }
        if face.vertices.iter().any(|&v| v >= g.n()) {
            let position = face.vertices.iter().position(|&v| v >= g.n()).unwrap();
            violations.push(Violation::NotAnEdge {
                face: fi,
                position,
                from: face.vertices[position],
                to: face.vertices[(position + 1) % k],
            });
            continue;
        }
        // resolve the edge of every step
        let mut steps = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (face.vertices[i], face.vertices[(i + 1) % k]);
            let candidates = joins.get(&(a.min(b), a.max(b)));
            let edge = match (&face.edges, candidates) {
                (_, None) => None,
                (Some(ids), Some(c)) => ids.get(i).copied().filter(|e| c.contains(e)),
                (None, Some(c)) if c.len() == 1 => Some(c[0]),
                (None, Some(_)) => {
                    violations.push(Violation::AmbiguousEdge {
                        face: fi,
                        position: i,
                    });
                    steps.clear();
                    break;
                }
            };
            match edge {
                Some(e) => steps.push(e),
                None => {
                    violations.push(Violation::NotAnEdge {
                        face: fi,
                        position: i,
                        from: a,
                        to: b,
                    });
                    steps.clear();
                    break;
                }
            }
        }
        if steps.len() != k {
            continue;
        }
        for i in 0..k {
            let a = face.vertices[i];
            let e = steps[i];
            let dart = Dart::new(e, g.edges()[e].0 != a);
            dart_use[dart.index()] += 1;
            // corner at the head of step i
            let v = face.vertices[(i + 1) % k];
            let next = steps[(i + 1) % k];
            let in_slot = slot_of[&(v, e)];
            let out_slot = slot_of[&(v, next)];
            succ[v][in_slot].push(out_slot);
        }
    }

    if total != 2 * g.m() {
        violations.push(Violation::LengthSum {
            total,
            expected: 2 * g.m(),
        });
    }
    for (idx, &count) in dart_use.iter().enumerate() {
        if count != 1 {
            let d = Dart(idx as u32);
            violations.push(Violation::DartCount {
                tail: g.tail(d),
                head: g.head(d),
                edge: d.edge(),
                count,
            });
        }
    }

    for (v, slots) in succ.iter().enumerate() {
        if let Some(detail) = rotation_defect(slots) {
            violations.push(Violation::Rotation { vertex: v, detail });
        }
    }

    let f = cert.faces.len();
    if !euler_parity_ok(g.n(), g.m(), f) {
        violations.push(Violation::Parity { faces: f });
    }
    let computed = genus_from_face_count(g.n(), g.m(), f);
    if computed != cert.claimed_genus {
        violations.push(Violation::GenusMismatch {
            claimed: cert.claimed_genus,
            computed,
        });
    }
    Ok(VerificationReport { violations })
}

/// Describes why the corner lists at one vertex fail to form a single cyclic
/// permutation, or `None` if they do.
fn rotation_defect(slots: &[Vec<usize>]) -> Option<String> {
    let d = slots.len();
    let mut image_hits = vec![0usize; d];
    for (s, outs) in slots.iter().enumerate() {
        if outs.len() != 1 {
            return Some(format!("slot {s} has {} successors", outs.len()));
        }
        image_hits[outs[0]] += 1;
    }
    if let Some(s) = image_hits.iter().position(|&h| h != 1) {
        return Some(format!("slot {s} has {} predecessors", image_hits[s]));
    }
    let mut x = 0;
    let mut steps = 0;
    loop {
        x = slots[x][0];
        steps += 1;
        if x == 0 {
            break;
        }
    }
    (steps != d).then(|| format!("rotation splits into orbits (first has {steps} of {d} slots)"))
}

impl fmt::Display for EmbeddingCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(f, "{CERTIFICATE_HEADER}")?;
        writeln!(
            f,
            "graph n={} m={} hash={}",
            self.fingerprint.n, self.fingerprint.m, self.fingerprint.hash
        )?;
        writeln!(f, "genus {}", self.claimed_genus)?;
        for face in &self.faces {
            write!(f, "face {}", join(&face.vertices))?;
            if let Some(edges) = &face.edges {
                write!(f, " edges={}", join(edges))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn serialize_certificate(cert: &EmbeddingCertificate) -> String {
    cert.to_string()
}

pub fn deserialize_certificate(text: &str) -> Result<EmbeddingCertificate, CertificateError> {
    let bad = |line: usize, message: &str| CertificateError::MalformedCertificate {
        line,
        message: message.to_string(),
    };
    let lines: Vec<&str> = text.lines().collect();
    let get = |i: usize, what: &str| {
        lines
            .get(i)
            .map(|l| l.trim_end())
            .ok_or_else(|| bad(i + 1, &format!("missing {what}")))
    };
    if get(0, "header")? != CERTIFICATE_HEADER {
        return Err(bad(1, &format!("expected `{CERTIFICATE_HEADER}`")));
    }

    let graph_line = get(1, "graph line")?;
    let fields = graph_line
        .strip_prefix("graph ")
        .ok_or_else(|| bad(2, "expected `graph n=.. m=.. hash=..`"))?;
    let mut n = None;
    let mut m = None;
    let mut hash = None;
    for field in fields.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(2, &format!("field `{field}` is not key=value")))?;
        match key {
            "n" => n = Some(value.parse().map_err(|_| bad(2, "n is not an integer"))?),
            "m" => m = Some(value.parse().map_err(|_| bad(2, "m is not an integer"))?),
            "hash" if !value.is_empty() && value.bytes().all(|b| b.is_ascii_hexdigit()) => {
                hash = Some(value.to_string())
            }
            "hash" => return Err(bad(2, "hash is not hexadecimal")),
            _ => return Err(bad(2, &format!("unknown field `{key}`"))),
        }
    }
    let fingerprint = GraphFingerprint {
        n: n.ok_or_else(|| bad(2, "missing n"))?,
        m: m.ok_or_else(|| bad(2, "missing m"))?,
        hash: hash.ok_or_else(|| bad(2, "missing hash"))?,
    };

    let genus_line = get(2, "genus line")?;
    let claimed_genus = genus_line
        .strip_prefix("genus ")
        .and_then(|g| g.trim().parse().ok())
        .ok_or_else(|| bad(3, "expected `genus <g>`"))?;

    let parse_ints = |text: &str, line: usize| -> Result<Vec<usize>, CertificateError> {
        text.split(',')
            .map(|t| {
                t.parse()
                    .map_err(|_| bad(line, &format!("`{t}` is not a vertex/edge id")))
            })
            .collect()
    };
    let mut faces = Vec::new();
    for (i, raw) in lines.iter().enumerate().skip(3) {
        let line = raw.trim_end();
        if line.is_empty() {
            continue;
        }
        let body = line
            .strip_prefix("face ")
            .ok_or_else(|| bad(i + 1, "expected `face v0,v1,...`"))?;
        let (verts, edges) = match body.split_once(" edges=") {
            Some((v, e)) => (v, Some(parse_ints(e, i + 1)?)),
            None => (body, None),
        };
        let vertices = parse_ints(verts, i + 1)?;
        if edges.as_ref().is_some_and(|e| e.len() != vertices.len()) {
            return Err(bad(i + 1, "edge list length differs from vertex list"));
        }
        faces.push(Face { vertices, edges });
    }
    if faces.is_empty() {
        return Err(bad(lines.len() + 1, "no faces"));
    }
    Ok(EmbeddingCertificate {
        fingerprint,
        faces,
        claimed_genus,
    })
}
