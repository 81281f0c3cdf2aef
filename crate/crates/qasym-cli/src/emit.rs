//! Serialization of sweep rows and meshes: CSV (UTF-8, `\n` line endings,
//! shortest round-trip float formatting), JSON, and ASCII OBJ.

use qasym::mesh::Mesh;

/// One sweep grid point. `asymmetry` is `None` where the value is undefined
/// (the scalar-degenerate γ = 0 point of the Fock model).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub model: String,
    pub param: String,
    pub gamma: f64,
    pub asymmetry: Option<f64>,
    pub backend: String,
}

pub const SWEEP_CSV_HEADER: &str = "model,param,gamma,asymmetry,backend";

fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v}")
    }
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 48 + 40);
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.model,
            r.param,
            fmt_f64(r.gamma),
            fmt_f64(r.asymmetry.unwrap_or(f64::NAN)),
            r.backend
        ));
    }
    out
}

/// Parse a sweep CSV back into rows; the inverse of [`sweep_to_csv`].
pub fn sweep_from_csv(text: &str) -> Result<Vec<SweepRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == SWEEP_CSV_HEADER => {}
        other => return Err(format!("unexpected header: {other:?}")),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(format!("row {idx}: expected 5 fields, got {}", fields.len()));
        }
        let gamma: f64 = fields[2]
            .parse()
            .map_err(|e| format!("row {idx}: bad gamma: {e}"))?;
        let value: f64 = fields[3]
            .parse()
            .map_err(|e| format!("row {idx}: bad asymmetry: {e}"))?;
        rows.push(SweepRow {
            model: fields[0].to_string(),
            param: fields[1].to_string(),
            gamma,
            asymmetry: if value.is_nan() { None } else { Some(value) },
            backend: fields[4].to_string(),
        });
    }
    Ok(rows)
}

pub fn sweep_to_json(
    job: serde_json::Value,
    rows: &[SweepRow],
    footnotes: &[String],
) -> serde_json::Value {
    let json_rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "model": r.model,
                "param": r.param,
                "gamma": r.gamma,
                "asymmetry": r.asymmetry,
                "backend": r.backend,
            })
        })
        .collect();
    serde_json::json!({
        "job": job,
        "rows": json_rows,
        "footnotes": footnotes,
    })
}

/// ASCII OBJ: `v x y z` records followed by 1-based `f i j k` records.
/// Output is byte-stable for fixed inputs (no timestamps, shortest
/// round-trip floats).
pub fn mesh_to_obj(mesh: &Mesh, comment: &str) -> String {
    let mut out = String::with_capacity(mesh.vertices.len() * 40 + mesh.faces.len() * 16);
    out.push_str("# ");
    out.push_str(comment);
    out.push('\n');
    for v in &mesh.vertices {
        out.push_str(&format!("v {} {} {}\n", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2])));
    }
    for f in &mesh.faces {
        out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    out
}

/// CSV point cloud: `x,y,z` header plus one row per vertex.
pub fn mesh_to_csv(mesh: &Mesh) -> String {
    let mut out = String::with_capacity(mesh.vertices.len() * 40 + 8);
    out.push_str("x,y,z\n");
    for v in &mesh.vertices {
        out.push_str(&format!("{},{},{}\n", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2])));
    }
    out
}
