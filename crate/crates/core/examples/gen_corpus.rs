//! Regenerates the bundled corpus: `cargo run --example gen_corpus -- <dir>`.

use std::fs;
use std::path::{Path, PathBuf};

use homlab::corpus::{enumerate_graphs, random_connected, random_targets};
use homlab::format::emit_graph6;
use homlab::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn write(dir: &Path, name: &str, header: &str, graphs: &[Graph]) {
    let mut text = format!("# {header}\n");
    for g in graphs {
        text.push_str(&emit_graph6(g).expect("small graph"));
        text.push('\n');
    }
    fs::write(dir.join(name), text).expect("write corpus file");
    println!("{name}: {} graphs", graphs.len());
}

fn main() {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus").into())
        .into();
    fs::create_dir_all(&dir).expect("corpus directory");

    let small: Vec<Graph> = (1..=5).flat_map(|n| enumerate_graphs(n, false)).collect();
    write(&dir, "small.g6", "all graphs on 1 to 5 vertices", &small);

    let six = enumerate_graphs(6, true);
    write(
        &dir,
        "connected6.g6",
        "all connected graphs on 6 vertices",
        &six,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(78);
    let mut larger = random_connected(&mut rng, 7, 30);
    larger.extend(random_connected(&mut rng, 8, 30));
    write(
        &dir,
        "connected78.g6",
        "random connected graphs on 7 and 8 vertices, seed 78",
        &larger,
    );

    let targets = random_targets(50, 50, 7);
    write(
        &dir,
        "targets.g6",
        "random graphs on at most 7 vertices, seed 50",
        &targets,
    );
}
