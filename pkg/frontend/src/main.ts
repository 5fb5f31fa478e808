import { createApp } from "./app.js";

const STARTER = `<?php
$friends = ['ada', 'bo'];
echo count($friends);
`;

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app mount point");
createApp(root, { initialSource: STARTER });
