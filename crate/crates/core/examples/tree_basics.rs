//! Parsing, Łukasiewicz encoding and the structural operators.
use treelcs::trees::{canonical_unrooted, decode_lukasiewicz, encode_lukasiewicz, parse, serialize};

fn main() {
    let t = parse("(()(()())(()))").expect("valid tree");
    println!("tree      {}  size={} height={} maxdeg={}", serialize(&t), t.size(), t.height(), t.max_outdegree());

    let path = encode_lukasiewicz(&t);
    println!("steps     {:?}", path.steps());
    println!("walk      {:?}", path.walk());
    assert_eq!(decode_lukasiewicz(&path), t);

    let v = 2;
    println!("cut at {v}  {}", serialize(&t.cut_at(v).unwrap()));
    println!("trim at {v} {}", serialize(&t.trim_at(v).unwrap()));
    println!("fringe {v}  {}", serialize(&t.subtree_at(v).unwrap()));
    let r = t.reroot(v).unwrap();
    println!("rerooted  {}", serialize(&r));
    assert_eq!(canonical_unrooted(&r), canonical_unrooted(&t));
    println!("arm depths at {v}: {:?}", t.neighbor_component_depths(v).unwrap());
    println!("diameter  {}", t.diameter());
}
