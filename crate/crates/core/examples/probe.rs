use orthoplanes::codebook::PlaneGroupSet;
use orthoplanes::decoder::{DecoderCache, DecoderGrads, DecoderMode, MlpDecoder};
use orthoplanes::rng::{stream, StreamKind};
use nalgebra::Vector3;
use rand::Rng;
use std::time::Instant;

fn main() {
    let mut r = stream(1, StreamKind::Bench, 0, 0);
    let set = PlaneGroupSet::new_random(4, 64, 8, 0.1, &mut r).unwrap();
    let dec = MlpDecoder::new_random(8, &[64, 64], DecoderMode::Density, &mut r).unwrap();
    let mut cache = DecoderCache::new();
    let mut grads = DecoderGrads::zeros_like(&dec);
    let mut gfeat = vec![0.0; set.param_count()];
    let mut feat = vec![0.0; 8];
    let mut ginp = vec![0.0; 8];
    let pts: Vec<Vector3<f64>> = (0..10000).map(|_| Vector3::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))).collect();

    // forward only
    let t0 = Instant::now();
    let mut acc = 0.0;
    for rep in 0..10 {
        for p in &pts {
            set.query_into(*p, &mut feat).unwrap();
            let o = dec.forward(&feat, &mut cache).unwrap();
            acc += o.scalar + o.color.x * (rep as f64);
        }
    }
    let fwd = t0.elapsed().as_secs_f64() / 1e5;
    // forward + backward
    let t1 = Instant::now();
    for _rep in 0..10 {
        for p in &pts {
            set.query_into(*p, &mut feat).unwrap();
            let o = dec.forward(&feat, &mut cache).unwrap();
            acc += o.scalar;
            dec.backward(&mut cache, Vector3::new(0.1, 0.2, 0.3), 0.5, &mut grads, &mut ginp).unwrap();
            set.backprop_query(*p, &ginp, &mut gfeat).unwrap();
        }
    }
    let fb = t1.elapsed().as_secs_f64() / 1e5;
    println!("checksum {acc:.3}");
    println!("forward only: {:.0} ns/sample  fwd+bwd: {:.0} ns/sample", fwd * 1e9, fb * 1e9);
}
