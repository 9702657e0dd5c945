const f = x => x
const g = f

const chainNext = x => x
  + 1

const callNext = x => g
(x => x)(3)

var weird = function () { return 1 } // no semicolon
var after = 2

const condArrow = true ? x => x + 1 : x => x - 1
const seq = (x => x, y => y)
let arr = [x => x, y => y * 2]

function trailing() { return after }
