function* numbers() {
  yield 1;
  yield 2;
}

async function fetchData(url) {
  const r = await Promise.resolve(url);
  return r;
}

const asyncArrow = async x => x + 1;
const asyncArrowBlock = async (x) => {
  return x + 2;
};

var machine = {
  async run() {
    return 1;
  },
  *gen() {
    yield "g";
  }
};

async function outerAsync() {
  function innerSync() { return 1; }
  return innerSync();
}

function* delegating() {
  yield* numbers();
}
