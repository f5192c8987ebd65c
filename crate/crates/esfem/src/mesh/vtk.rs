//! Legacy ASCII VTK output (POLYDATA with point scalars).

use super::SurfaceMesh;
use crate::Result;
use std::io::Write;
use std::path::Path;

/// Write the mesh and any number of per-vertex scalar fields as a legacy
/// VTK polydata file, one snapshot per file.
pub fn write_vtk(
    mesh: &SurfaceMesh,
    title: &str,
    scalars: &[(&str, &[f64])],
    path: &Path,
) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "# vtk DataFile Version 3.0")?;
    writeln!(out, "{title}")?;
    writeln!(out, "ASCII")?;
    writeln!(out, "DATASET POLYDATA")?;
    writeln!(out, "POINTS {} double", mesh.vertex_count())?;
    for p in mesh.positions() {
        writeln!(out, "{:.12e} {:.12e} {:.12e}", p.x, p.y, p.z)?;
    }
    writeln!(
        out,
        "POLYGONS {} {}",
        mesh.triangle_count(),
        4 * mesh.triangle_count()
    )?;
    for tri in mesh.triangles() {
        writeln!(out, "3 {} {} {}", tri[0], tri[1], tri[2])?;
    }
    if !scalars.is_empty() {
        writeln!(out, "POINT_DATA {}", mesh.vertex_count())?;
        for (name, values) in scalars {
            debug_assert_eq!(values.len(), mesh.vertex_count());
            writeln!(out, "SCALARS {name} double 1")?;
            writeln!(out, "LOOKUP_TABLE default")?;
            for v in *values {
                writeln!(out, "{v:.12e}")?;
            }
        }
    }
    Ok(())
}
