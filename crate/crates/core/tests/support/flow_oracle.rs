//! Discretized orbit enumeration: label each grid point by the rank of the
//! generating vector fields there and count connected level sets.

use std::collections::VecDeque;

use realflag_core::linalg::{numeric_rank, Mat};

/// Connected components of the level sets of `label` on a graph.
pub fn components(labels: &[usize], neighbours: &dyn Fn(usize) -> Vec<usize>) -> usize {
    let mut seen = vec![false; labels.len()];
    let mut count = 0;
    for start in 0..labels.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in neighbours(v) {
                if !seen[w] && labels[w] == labels[v] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    count
}

pub fn field_rank(fields: &[Vec<f64>]) -> usize {
    let rows = fields[0].len();
    let m = Mat::from_fn(rows, fields.len(), |r, c| fields[c][r]);
    if m.amax() < 1e-12 {
        0
    } else {
        numeric_rank(&m, 1e-9)
    }
}

/// Orbit strata of the lines of R^2 under 2x2 matrices, on a circle grid.
pub fn projective_line_oracle(gens: &[[[f64; 2]; 2]], n: usize) -> usize {
    let labels: Vec<usize> = (0..n)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / n as f64;
            let (c, s) = (t.cos(), t.sin());
            let fields: Vec<Vec<f64>> = gens
                .iter()
                .map(|a| {
                    let av = [a[0][0] * c + a[0][1] * s, a[1][0] * c + a[1][1] * s];
                    vec![-s * av[0] + c * av[1]]
                })
                .collect();
            field_rank(&fields)
        })
        .collect();
    components(&labels, &|v| vec![(v + 1) % n, (v + n - 1) % n])
}

/// Orbit strata of the null lines of R^{1,3}, i.e. the sphere `x = (1, u)`,
/// on a latitude-longitude grid with poles at `±e1`.
pub fn celestial_sphere_oracle(gens: &[Mat], rows: usize, cols: usize) -> usize {
    let point = |u: [f64; 3]| -> usize {
        let x = realflag_core::Vector::from_vec(vec![1.0, u[0], u[1], u[2]]);
        let fields: Vec<Vec<f64>> = gens
            .iter()
            .map(|a| {
                let ax = a * &x;
                (0..3).map(|i| ax[i + 1] - ax[0] * u[i]).collect()
            })
            .collect();
        field_rank(&fields)
    };
    // Node 0 is +e1, node 1 is -e1, then the grid rows 1..rows-1.
    let mut labels = vec![point([1.0, 0.0, 0.0]), point([-1.0, 0.0, 0.0])];
    for i in 1..rows {
        let th = std::f64::consts::PI * i as f64 / rows as f64;
        for j in 0..cols {
            let ph = 2.0 * std::f64::consts::PI * j as f64 / cols as f64;
            labels.push(point([th.cos(), th.sin() * ph.cos(), th.sin() * ph.sin()]));
        }
    }
    let idx = |i: usize, j: usize| 2 + (i - 1) * cols + (j % cols);
    let neighbours = |v: usize| -> Vec<usize> {
        match v {
            0 => (0..cols).map(|j| idx(1, j)).collect(),
            1 => (0..cols).map(|j| idx(rows - 1, j)).collect(),
            _ => {
                let (i, j) = ((v - 2) / cols + 1, (v - 2) % cols);
                let mut out = vec![idx(i, j + 1), idx(i, j + cols - 1)];
                out.push(if i == 1 { 0 } else { idx(i - 1, j) });
                out.push(if i == rows - 1 { 1 } else { idx(i + 1, j) });
                out
            }
        }
    };
    components(&labels, &neighbours)
}

pub fn unit(i: usize, j: usize, v: f64) -> Mat {
    let mut m = Mat::zeros(4, 4);
    m[(i, j)] = v;
    m
}
