#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const SYNTHETIC: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/synthetic");

pub fn synthetic(name: &str) -> PathBuf {
    Path::new(SYNTHETIC).join(name)
}

pub fn doi(k: usize) -> String {
    format!("10.5555/t.{k:04}")
}

/// Sample CSV and indicator fixture for `n` papers. Every seventh paper
/// has no citation count; roughly a third of altmetric cells are zero.
pub fn fixture(n: usize, seed: u64) -> (String, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = String::from("id,authors,title,doi,publication_date,journal\n");
    let mut indicators = serde_json::Map::new();
    let alt = [
        ("SocialMedia", "Tweets", "Twitter"),
        ("SocialMedia", "Shares, Likes & Comments", "Facebook"),
        ("Mentions", "News Mentions", "News"),
        ("Mentions", "Blog Mentions", "Blog"),
        ("Captures", "Readers", "Mendeley"),
        ("Usage", "Abstract Views", "Digital Commons"),
    ];
    for k in 0..n {
        sample.push_str(&format!(
            "P{k:03},\"Author{k} A; Second B\",Title number {k},{},2020-01-{:02},Journal {}\n",
            doi(k),
            1 + k % 28,
            k % 3
        ));
        let altmetrics: Vec<Value> = alt
            .iter()
            .map(|(c, m, s)| {
                let v: u64 = if rng.gen_bool(0.35) {
                    0
                } else {
                    rng.gen_range(1..500)
                };
                json!({"category": c, "metric": m, "source": s, "value": v})
            })
            .collect();
        let citations = if k % 7 == 3 {
            Value::Null
        } else {
            json!(rng.gen_range(0..60u64))
        };
        indicators.insert(
            doi(k),
            json!({"citation_count": citations, "altmetrics": altmetrics}),
        );
    }
    (
        sample,
        serde_json::to_string_pretty(&Value::Object(indicators)).unwrap(),
    )
}
