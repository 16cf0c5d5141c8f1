//! Listing classes of connected models within bounds and tabulating them by
//! surface type.

use flowinv::enumerate::{count_classes, enumerate_pairs, EnumBounds};
use flowinv::io::serialize_model_compact;
use flowinv::iso::IsoMode;

fn main() {
    let b = EnumBounds {
        max_saddles: 1,
        max_k_sum: 1,
        max_centers: 3,
        max_annuli: 3,
        closed_only: true,
        ..Default::default()
    };
    let pairs = enumerate_pairs(&b);
    println!("{} classes; the first few:", pairs.len());
    for p in pairs.iter().take(4) {
        println!("  {}", serialize_model_compact(p));
    }
    for mode in [IsoMode::PLUS, IsoMode::ANY] {
        println!("{mode:?}");
        for (k, c) in count_classes(&EnumBounds { mode, ..b }) {
            println!(
                "  orientable={} genus={} saddles={}: {}",
                k.orientable, k.genus, k.saddles, c.count
            );
        }
    }
}
