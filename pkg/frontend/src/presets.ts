// GENERATED by scripts/sync-presets.mjs from the packaged scene files;
// do not edit by hand.
import type { SceneDoc } from "./types.js";

export const DIFF_PAIR_SCENE: SceneDoc = {"schema_version":1,"ground_height":0,"camera":{"rotation":[[0.8191520442889918,-0.573576436351046,0],[0.573576436351046,0.8191520442889918,0],[0,0,1]],"translation":[0.5,0.5,0.55]},"user":{"position":[1,2],"height":1.75},"robot_start":{"position":[0.8,0.8],"heading":0,"radius":0.18,"speed":0.5,"turn_rate":1.5},"objects":[{"id":"chair1","category":"chair","position":[3,2.1],"footprint_radius":0.22,"properties":[]},{"id":"bed1","category":"bed","position":[3,1.9],"footprint_radius":0.3,"properties":[]}],"grid":{"resolution":0.05,"width":120,"height":80,"origin":[0,0],"occupancy":{"encoding":"rle","data":[[1,242],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,242]]}}} as SceneDoc;

export const SAME_PAIR_SCENE: SceneDoc = {"schema_version":1,"ground_height":0,"camera":{"rotation":[[0.9063077870366499,0.42261826174069944,0],[-0.42261826174069944,0.9063077870366499,0],[0,0,1]],"translation":[0.5,3.5,0.55]},"user":{"position":[1,2],"height":1.75},"robot_start":{"position":[0.8,0.8],"heading":0,"radius":0.18,"speed":0.5,"turn_rate":1.5},"objects":[{"id":"chair_a","category":"chair","position":[3,2.1],"footprint_radius":0.22,"properties":[]},{"id":"chair_b","category":"chair","position":[3,1.9],"footprint_radius":0.22,"properties":[]},{"id":"bed1","category":"bed","position":[3,2.55],"footprint_radius":0.3,"properties":[]}],"grid":{"resolution":0.05,"width":120,"height":80,"origin":[0,0],"occupancy":{"encoding":"rle","data":[[1,242],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,242]]}}} as SceneDoc;

export const PLAYGROUND_SCENE: SceneDoc = {"schema_version":1,"ground_height":0,"camera":{"quaternion":[0.9937680178757644,0.006079677280626756,-0.06949102930147368,0.08694343573875718],"translation":[0.4,3,0.6]},"user":{"position":[1.5,3],"height":1.75},"robot_start":{"position":[1.5,2],"heading":0,"radius":0.18,"speed":0.6,"turn_rate":1.5},"objects":[{"id":"door1","category":"door","position":[7.5,4.5],"footprint_radius":0.15,"properties":[]},{"id":"chair1","category":"chair","position":[2.5,1.2],"footprint_radius":0.22,"properties":[]},{"id":"chair2","category":"chair","position":[2.5,4.8],"footprint_radius":0.22,"properties":[]},{"id":"chair3","category":"chair","position":[5,1.5],"footprint_radius":0.22,"properties":["black"]},{"id":"bed1","category":"bed","position":[6.5,1.2],"footprint_radius":0.4,"properties":[]},{"id":"table1","category":"table","position":[5,4.5],"footprint_radius":0.45,"properties":[]},{"id":"sofa1","category":"sofa","position":[2,3],"footprint_radius":0.4,"properties":["red"]}],"grid":{"resolution":0.05,"width":160,"height":120,"origin":[0,0],"occupancy":{"encoding":"rle","data":[[1,322],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,118],[1,42],[0,118],[1,42],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,156],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,4],[0,77],[1,2],[0,77],[1,322]]}}} as SceneDoc;

export const UNIQUE_DOOR_SCENE: SceneDoc = {"schema_version":1,"ground_height":0,"camera":{"quaternion":[0.9810602621904069,0.01513443590133862,-0.08583165117743129,0.17298739392508944],"translation":[0.3,3,0.6]},"user":{"position":[1,3],"height":1.75},"robot_start":{"position":[1,2],"heading":0,"radius":0.18,"speed":0.5,"turn_rate":1.5},"objects":[{"id":"door1","category":"door","position":[5.5,3],"footprint_radius":0.15,"properties":[]},{"id":"chair1","category":"chair","position":[2,1.5],"footprint_radius":0.22,"properties":[]},{"id":"chair2","category":"chair","position":[2,4.5],"footprint_radius":0.22,"properties":[]},{"id":"chair3","category":"chair","position":[3.5,3],"footprint_radius":0.22,"properties":["black"]},{"id":"bed1","category":"bed","position":[4,1.2],"footprint_radius":0.4,"properties":[]}],"grid":{"resolution":0.05,"width":120,"height":120,"origin":[0,0],"occupancy":{"encoding":"rle","data":[[1,242],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,57],[1,2],[0,57],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,4],[0,116],[1,242]]}}} as SceneDoc;

export const PRESETS: Record<string, SceneDoc> = {
  "diff_pair": DIFF_PAIR_SCENE,
  "same_pair": SAME_PAIR_SCENE,
  "playground": PLAYGROUND_SCENE,
  "unique_door": UNIQUE_DOOR_SCENE,
};
